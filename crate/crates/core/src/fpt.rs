//! Decision by solution size: matching shortcut, then star partitions of
//! `h` tested for embedding in both graphs.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::enum_star_partitions;
use crate::error::{Error, Result};
use crate::forest::{Certificate, Embedding, StarForest};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::matching::max_matching;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trials {
    Auto,
    Fixed(u64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColorCodingConfig {
    pub trials: Trials,
    /// Target false-negative probability when `trials` is `Auto`.
    pub failure_probability: f64,
    pub rng_seed: u64,
}

impl Default for ColorCodingConfig {
    fn default() -> Self {
        ColorCodingConfig {
            trials: Trials::Auto,
            failure_probability: 0.01,
            rng_seed: 0,
        }
    }
}

impl ColorCodingConfig {
    /// `⌈e^h · ln(1/p)⌉` in auto mode: a colouring makes a fixed `h`-vertex
    /// copy colourful with probability at least `e^-h`.
    pub fn trial_count(&self, h: usize) -> u64 {
        match self.trials {
            Trials::Fixed(t) => t.max(1),
            Trials::Auto => {
                let t = ((h as f64).exp() * (1.0 / self.failure_probability).ln()).ceil();
                (t as u64).max(1)
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.failure_probability > 0.0 && self.failure_probability < 1.0) {
            return Err(Error::precondition(
                "failure probability must lie in (0, 1)",
            ));
        }
        if self.trials == Trials::Fixed(0) {
            return Err(Error::precondition("trial count must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbedMode {
    Exact,
    Randomized,
}

impl EmbedMode {
    /// Exact up to `h = 12`, colour coding above.
    pub fn default_for(h: usize) -> Self {
        if h <= 12 {
            EmbedMode::Exact
        } else {
            EmbedMode::Randomized
        }
    }
}

/// Largest forest the colour-coding table is allowed to handle.
pub const MAX_COLORS: usize = 24;

/// Finds an embedding of `forest` into `g`.
///
/// Exact mode never errs. Randomized mode only returns embeddings that were
/// actually found, so `Some` is always correct; `None` may be a false
/// negative with probability at most the configured failure probability.
pub fn embeds_star_forest(
    g: &Graph,
    forest: &StarForest,
    mode: EmbedMode,
    cfg: &ColorCodingConfig,
) -> Result<Option<Embedding>> {
    if forest.total_vertices() > g.vertex_count() {
        return Ok(None);
    }
    match mode {
        EmbedMode::Exact => Ok(embed_exact(g, forest)),
        EmbedMode::Randomized => embed_color_coding(g, forest, cfg),
    }
}

fn embed_exact(g: &Graph, forest: &StarForest) -> Option<Embedding> {
    let sizes = forest.sizes();
    let mut search = Exact {
        g,
        sizes,
        used: vec![false; g.vertex_count()],
        free_deg: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
        stars: Vec::new(),
    };
    search.place(0, 0).then(|| Embedding::new(search.stars))
}

struct Exact<'a> {
    g: &'a Graph,
    sizes: &'a [usize],
    used: Vec<bool>,
    free_deg: Vec<usize>,
    stars: Vec<Vec<usize>>,
}

impl Exact<'_> {
    fn mark(&mut self, v: usize, on: bool) {
        self.used[v] = on;
        for &w in self.g.neighbors(v) {
            if on {
                self.free_deg[w] -= 1;
            } else {
                self.free_deg[w] += 1;
            }
        }
    }

    /// Stars `i..` remain; `min_centre` breaks symmetry between equal sizes.
    fn place(&mut self, i: usize, min_centre: usize) -> bool {
        if i == self.sizes.len() {
            return true;
        }
        let d = self.sizes[i];
        // enough free vertices able to host each remaining star size
        let free = self.used.iter().filter(|&&u| !u).count();
        if free < self.sizes[i..].iter().sum::<usize>() {
            return false;
        }
        let able = (0..self.g.vertex_count())
            .filter(|&v| !self.used[v] && self.free_deg[v] + 1 >= d)
            .count();
        let need = self.sizes[i..].iter().filter(|&&s| s == d).count();
        if able < need {
            return false;
        }
        for c in min_centre..self.g.vertex_count() {
            if self.used[c] || self.free_deg[c] + 1 < d {
                continue;
            }
            self.mark(c, true);
            let mut cand: Vec<usize> = self
                .g
                .neighbors(c)
                .iter()
                .copied()
                .filter(|&w| !self.used[w])
                .collect();
            // low free degree first: leaves that are poor centres anyway
            cand.sort_by_key(|&w| (self.free_deg[w], w));
            let mut pick = Vec::with_capacity(d - 1);
            if self.choose(i, c, &cand, 0, d - 1, &mut pick) {
                return true;
            }
            self.mark(c, false);
        }
        false
    }

    fn choose(
        &mut self,
        i: usize,
        c: usize,
        cand: &[usize],
        from: usize,
        need: usize,
        pick: &mut Vec<usize>,
    ) -> bool {
        if need == 0 {
            let mut star = vec![c];
            star.extend_from_slice(pick);
            self.stars.push(star);
            let same_next = i + 1 < self.sizes.len() && self.sizes[i + 1] == self.sizes[i];
            let next_min = if same_next { c + 1 } else { 0 };
            if self.place(i + 1, next_min) {
                return true;
            }
            self.stars.pop();
            return false;
        }
        for j in from..cand.len() {
            if cand.len() - j < need {
                break;
            }
            let w = cand[j];
            self.mark(w, true);
            pick.push(w);
            if self.choose(i, c, cand, j + 1, need - 1, pick) {
                return true;
            }
            pick.pop();
            self.mark(w, false);
        }
        false
    }
}

fn embed_color_coding(
    g: &Graph,
    forest: &StarForest,
    cfg: &ColorCodingConfig,
) -> Result<Option<Embedding>> {
    cfg.validate()?;
    let h = forest.total_vertices();
    if h == 0 {
        return Ok(Some(Embedding::default()));
    }
    if h > MAX_COLORS {
        return Err(Error::resource(format!(
            "colour coding over {h} colours exceeds the limit of {MAX_COLORS}"
        )));
    }
    let trials = cfg.trial_count(h);
    let mut master = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    for _ in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(master.gen());
        let colour: Vec<usize> = (0..g.vertex_count()).map(|_| rng.gen_range(0..h)).collect();
        if let Some(e) = colourful_forest(g, forest, &colour) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Searches for a copy of `forest` whose vertices carry pairwise distinct
/// colours.
///
/// For each star size the achievable colour sets `{col(c)} ∪ L`, with `L`
/// a set of colours among `c`'s neighbours, are tabulated with one witness
/// each. Stars are then added one at a time, keeping every reachable union
/// of disjoint colour sets.
fn colourful_forest(g: &Graph, forest: &StarForest, colour: &[usize]) -> Option<Embedding> {
    let mut signatures: HashMap<usize, HashMap<u32, (usize, Vec<usize>)>> = HashMap::new();
    for &d in forest.sizes() {
        signatures
            .entry(d)
            .or_insert_with(|| star_signatures(g, colour, d));
    }
    // layers[i]: reachable colour masks after i stars, with back-pointers
    let mut layers: Vec<HashMap<u32, (u32, u32)>> = vec![HashMap::from([(0u32, (0, 0))])];
    for &d in forest.sizes() {
        let sigs = &signatures[&d];
        let mut next = HashMap::new();
        for &m in layers.last().unwrap().keys() {
            for &s in sigs.keys() {
                if m & s == 0 {
                    next.entry(m | s).or_insert((m, s));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        layers.push(next);
    }
    let mut stars = Vec::new();
    let mut m = *layers.last().unwrap().keys().next().unwrap();
    for i in (1..layers.len()).rev() {
        let (prev, s) = layers[i][&m];
        let d = forest.sizes()[i - 1];
        let (c, leaves) = &signatures[&d][&s];
        let mut star = vec![*c];
        star.extend_from_slice(leaves);
        stars.push(star);
        m = prev;
    }
    stars.reverse();
    Some(Embedding::new(stars))
}

fn star_signatures(g: &Graph, colour: &[usize], d: usize) -> HashMap<u32, (usize, Vec<usize>)> {
    let mut out = HashMap::new();
    for c in 0..g.vertex_count() {
        let own = 1u32 << colour[c];
        // one witness neighbour per colour
        let mut by_colour: HashMap<usize, usize> = HashMap::new();
        for &w in g.neighbors(c) {
            if colour[w] != colour[c] {
                by_colour.entry(colour[w]).or_insert(w);
            }
        }
        let mut cols: Vec<usize> = by_colour.keys().copied().collect();
        cols.sort_unstable();
        if cols.len() < d - 1 {
            continue;
        }
        let mut pick = Vec::new();
        subsets(&cols, 0, d - 1, &mut pick, &mut |sub| {
            let mask = sub.iter().fold(own, |m, &col| m | 1 << col);
            out.entry(mask)
                .or_insert_with(|| (c, sub.iter().map(|col| by_colour[col]).collect()));
        });
    }
    out
}

fn subsets(
    items: &[usize],
    from: usize,
    need: usize,
    pick: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if need == 0 {
        f(pick);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < need {
            break;
        }
        pick.push(items[i]);
        subsets(items, i + 1, need - 1, pick, f);
        pick.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub answer: bool,
    pub certificate: Option<Certificate>,
}

/// Decides whether the graphs share a star forest on at least `h` vertices.
///
/// If both graphs have a matching of `⌈h/2⌉` edges, that matching is the
/// witness. Otherwise a common forest on exactly `h` vertices is sought
/// among the star partitions of `h`, largest parts first.
pub fn solve_h(
    inst: &Instance,
    cfg: &ColorCodingConfig,
    mode: Option<EmbedMode>,
) -> Result<Decision> {
    let h = inst.h;
    let no = Decision {
        answer: false,
        certificate: None,
    };
    if h == 0 {
        let empty = StarForest::empty();
        return Ok(Decision {
            answer: true,
            certificate: Some(Certificate::new(
                &empty,
                Embedding::default(),
                Embedding::default(),
            )),
        });
    }
    if inst.trivially_no() {
        return Ok(no);
    }
    let half = h.div_ceil(2);
    let m1 = max_matching(&inst.g1);
    let m2 = max_matching(&inst.g2);
    if m1.len() >= half && m2.len() >= half {
        let as_stars = |m: &[(usize, usize)]| {
            Embedding::new(m[..half].iter().map(|&(u, v)| vec![u, v]).collect())
        };
        return Ok(Decision {
            answer: true,
            certificate: Some(Certificate::new(
                &StarForest::matching(half),
                as_stars(&m1),
                as_stars(&m2),
            )),
        });
    }
    let mode = mode.unwrap_or(EmbedMode::default_for(h));
    for forest in enum_star_partitions(h) {
        // a forest with s stars contains a matching of size s
        if forest.star_count() > m1.len() || forest.star_count() > m2.len() {
            continue;
        }
        let Some(e1) = embeds_star_forest(&inst.g1, &forest, mode, cfg)? else {
            continue;
        };
        let Some(e2) = embeds_star_forest(&inst.g2, &forest, mode, cfg)? else {
            continue;
        };
        return Ok(Decision {
            answer: true,
            certificate: Some(Certificate::new(&forest, e1, e2)),
        });
    }
    Ok(no)
}
