use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use comstar::graph::named::{path, star};
use comstar::Instance;
use comstar_cli::{
    cmd_bench, cmd_gen, cmd_solve, cmd_verify, solve_instance, Algo, Answer, GenKind, KwayArgs,
    RunReport, SolveOpts,
};

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_comstar"))
}

fn solve(file: &str, algo: Algo) -> RunReport {
    let opts = SolveOpts {
        algo,
        ..SolveOpts::default()
    };
    cmd_solve(&corpus().join(file), &opts).unwrap()
}

#[test]
fn oracle_and_tw_agree_on_p4_star() {
    let a = solve("p4_star3.txt", Algo::Oracle);
    let b = solve("p4_star3.txt", Algo::Tw);
    assert_eq!(a.answer, Answer::Size(3));
    assert_eq!(b.answer, Answer::Size(3));
    assert_eq!(a.vector, vec![3]);
    assert_eq!(a.instance_digest, b.instance_digest);
}

#[test]
fn corpus_solvers_agree() {
    let mut files: Vec<_> = fs::read_dir(corpus())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    files.sort();
    for f in files {
        let want = solve(&f, Algo::Oracle).answer;
        for algo in [Algo::Tw, Algo::Cc, Algo::TdDeg, Algo::Vc, Algo::Auto] {
            assert_eq!(solve(&f, algo).answer, want, "{f} with {algo:?}");
        }
        let Answer::Size(opt) = want else {
            unreachable!()
        };
        let eptas = solve(&f, Algo::Eptas).answer;
        let Answer::Size(sol) = eptas else {
            unreachable!()
        };
        assert!(2 * sol >= opt && sol <= opt);
        let fpt = solve(&f, Algo::FptH);
        let (inst, _) = comstar_cli::load_instance(&corpus().join(&f)).unwrap();
        let yes = if opt >= inst.h { "yes" } else { "no" };
        assert_eq!(fpt.answer, Answer::Decision(yes.into()), "{f}");
    }
}

#[test]
fn reports_round_trip_and_are_deterministic() {
    let a = solve("c6_spider.txt", Algo::FptH);
    let json = serde_json::to_string(&a).unwrap();
    let back: RunReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
    let b = solve("c6_spider.txt", Algo::FptH);
    assert_eq!(
        RunReport { elapsed_ms: 0, ..a },
        RunReport { elapsed_ms: 0, ..b }
    );
    let s = solve("k3_k3.txt", Algo::Oracle);
    let back: RunReport = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
    assert_eq!(back, s);
}

#[test]
fn auto_dispatch() {
    let big = |g1, g2| Instance::new(g1, g2, 0);
    let opts = SolveOpts::default();
    let many_edges = (0..8).fold(comstar::Graph::new(0), |g, _| g.disjoint_union(&path(2)));
    let r = solve_instance(&big(many_edges.clone(), many_edges), String::new(), &opts).unwrap();
    assert_eq!(r.parameters["dispatch"], "cc");
    assert_eq!(r.answer, Answer::Size(16));
    let r = solve_instance(&big(star(14), star(13)), String::new(), &opts).unwrap();
    assert_eq!(r.parameters["dispatch"], "vc");
    assert_eq!(r.answer, Answer::Size(14));
    let r = solve_instance(&big(path(14), path(13)), String::new(), &opts).unwrap();
    assert_eq!(r.parameters["dispatch"], "tw");
    assert_eq!(r.answer, Answer::Size(13));
    let r = solve("k3_k3.txt", Algo::Auto);
    assert_eq!(r.parameters["dispatch"], "oracle");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3\n2 1\n0 5\n---\n1 0\n").unwrap();
    let st = bin()
        .args(["solve", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));

    let p4 = corpus().join("p4_star3.txt");
    let st = bin()
        .args(["solve", p4.to_str().unwrap(), "--algo", "cc", "--k", "2"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(3));

    let big = dir.path().join("big.txt");
    fs::write(&big, Instance::new(path(13), path(2), 1).to_text()).unwrap();
    let st = bin()
        .args(["solve", big.to_str().unwrap(), "--algo", "oracle"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(4));

    let st = bin()
        .args(["solve", p4.to_str().unwrap(), "--algo", "tw"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    let report: RunReport = serde_json::from_slice(&st.stdout).unwrap();
    assert_eq!(report.answer, Answer::Size(3));
}

#[test]
fn verify_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = corpus().join("p4_star3.txt");
    let cert = dir.path().join("cert.json");
    let opts = SolveOpts {
        algo: Algo::FptH,
        certificate: Some(cert.clone()),
        ..SolveOpts::default()
    };
    assert_eq!(
        cmd_solve(&p4, &opts).unwrap().answer,
        Answer::Decision("yes".into())
    );
    assert!(cmd_verify(&p4, &cert).is_ok());
    let st = bin()
        .args(["verify", p4.to_str().unwrap(), cert.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));

    let write = |name: &str, json: &str| {
        let p = dir.path().join(name);
        fs::write(&p, json).unwrap();
        p
    };
    let non_edge = write(
        "non_edge.json",
        r#"{"star_sizes":[3],"emb1":[[0,1,2]],"emb2":[[0,1,2]]}"#,
    );
    let e = cmd_verify(&p4, &non_edge).unwrap_err();
    assert_eq!(e.exit_code(), 1);
    let mismatch = write(
        "mismatch.json",
        r#"{"star_sizes":[3],"emb1":[[1,0,2]],"emb2":[[0,1]]}"#,
    );
    assert_eq!(cmd_verify(&p4, &mismatch).unwrap_err().exit_code(), 1);
    let st = bin()
        .args(["verify", p4.to_str().unwrap(), mismatch.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
}

#[test]
fn generators() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = dir.path().join("k3.txt");
    fs::write(&k3, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let out = dir.path().join("p3.txt");
    cmd_gen(&GenKind::P3 { graph: k3.clone() }, &out).unwrap();
    assert!(out.exists());
    let side: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("p3.txt.labels.json")).unwrap())
            .unwrap();
    assert_eq!(side["construction"]["kind"], "p3");
    assert_eq!(solve_path(&out, Algo::Oracle), Answer::Size(3));

    let odd = KwayArgs {
        items: vec![15, 13],
        k: 2,
        capacity: 14,
        rescale: false,
        certificate: None,
    };
    let e = cmd_gen(&GenKind::KwayTd5(odd), &dir.path().join("x.txt")).unwrap_err();
    assert_eq!(e.exit_code(), 3);
    let st = bin()
        .args([
            "gen",
            "kway-td5",
            "--items",
            "15,13",
            "--k",
            "2",
            "--capacity",
            "14",
        ])
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(3));

    let cert = dir.path().join("pw4.cert.json");
    let args = KwayArgs {
        items: vec![3, 3],
        k: 2,
        capacity: 3,
        rescale: false,
        certificate: Some(cert.clone()),
    };
    let inst = dir.path().join("pw4.txt");
    let li = cmd_gen(&GenKind::KwayPw4(args), &inst).unwrap();
    assert_eq!(li.instance.h, 148);
    assert!(cmd_verify(&inst, &cert).is_ok());
}

fn solve_path(p: &Path, algo: Algo) -> Answer {
    let opts = SolveOpts {
        algo,
        ..SolveOpts::default()
    };
    cmd_solve(p, &opts).unwrap().answer
}

#[test]
fn bench_rows() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["p4_star3.txt", "k3_k3.txt", "matchings.txt"] {
        fs::copy(corpus().join(f), dir.path().join(f)).unwrap();
    }
    let mut buf = Vec::new();
    let rows = cmd_bench(dir.path(), &[Algo::Oracle, Algo::Tw], 7, &mut buf).unwrap();
    assert_eq!(rows, 6);
    let mut rdr = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["digest", "algo", "answer", "vector", "elapsed_ms", "seed"]
    );
    let recs: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(recs.len(), 6);
    for pair in recs.chunks(2) {
        assert_eq!(pair[0][2], pair[1][2]);
        assert_eq!(&pair[0][5], "7");
    }
}
