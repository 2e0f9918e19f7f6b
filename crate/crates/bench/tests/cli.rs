use std::path::Path;
use std::process::{Command, Output};

fn gcol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcol")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_lb_writes_graph_and_parents() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().join("lb.txt");
    let res = gcol(&["gen-lb", "--k", "1", "--r", "2", "--mprime", "4", "--output", s(&out)]);
    assert!(res.status.success());
    let edges = std::fs::read_to_string(&out).unwrap();
    assert_eq!(edges.lines().count(), 12);
    let parents = std::fs::read_to_string(d.path().join("lb.parent.txt")).unwrap();
    assert_eq!(parents.lines().count(), 12);
    assert!(parents.lines().all(|l| l.split(' ').count() == 2));
}

#[test]
fn gen_lb_check_reports_failed_vertex_bound() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().join("lb.txt");
    let res = gcol(&["gen-lb", "--k", "1", "--r", "1", "--mprime", "4", "--output", s(&out), "--check"]);
    let text = String::from_utf8(res.stdout).unwrap();
    assert!(text.contains("claim: true"), "{text}");
    assert!(text.contains("vertex bound |V| >= (m'-1)^c: false"), "{text}");
    assert_eq!(res.status.code(), Some(1));
}

#[test]
fn gen_lb_rejects_small_mprime() {
    let d = tempfile::tempdir().unwrap();
    let res = gcol(&["gen-lb", "--k", "1", "--r", "2", "--mprime", "3", "--output", s(&d.path().join("x.txt"))]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("must exceed"));
}

#[test]
fn verify_order_and_solution() {
    let d = tempfile::tempdir().unwrap();
    let g = d.path().join("star.txt");
    std::fs::write(&g, "5 1\n5 2\n5 3\n5 4\n").unwrap();
    let order = d.path().join("order.txt");
    std::fs::write(&order, "5\n1\n2\n3\n4\n").unwrap();
    let res = gcol(&["verify", "--input", s(&g), "--order", s(&order), "--radius", "1,2"]);
    let text = String::from_utf8(res.stdout).unwrap();
    assert_eq!(text, "r = 1: wcol = 2, col = 2\nr = 2: wcol = 2, col = 2\n");

    let sol = d.path().join("sol.txt");
    std::fs::write(&sol, "S: 5\nB: 1 2 3 4\n").unwrap();
    let res = gcol(&["verify", "--input", s(&g), "--solution", s(&sol), "--radius", "2"]);
    assert!(res.status.success());
    assert!(String::from_utf8(res.stdout).unwrap().contains("score = 4"));

    std::fs::write(&sol, "S:\nB: 1 2\n").unwrap();
    let res = gcol(&["verify", "--input", s(&g), "--solution", s(&sol), "--radius", "2"]);
    assert_eq!(res.status.code(), Some(1));

    let start = d.path().join("a.txt");
    std::fs::write(&start, "1\n").unwrap();
    std::fs::write(&sol, "S:\nB: 1\n").unwrap();
    let res = gcol(&["verify", "--input", s(&g), "--solution", s(&sol), "--start", s(&start), "--radius", "3"]);
    assert!(res.status.success());
}

#[test]
fn wcol_then_stats() {
    let d = tempfile::tempdir().unwrap();
    let graphs = d.path().join("graphs");
    std::fs::create_dir(&graphs).unwrap();
    std::fs::write(graphs.join("p.txt"), "0 1\n1 2\n2 3\n3 4\n4 5\n").unwrap();
    std::fs::write(graphs.join("c.txt"), "0 1\n1 2\n2 3\n3 4\n4 0\n0 2\n").unwrap();
    std::fs::write(graphs.join("k.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n").unwrap();
    std::fs::write(graphs.join("bad.txt"), "not an edge\n").unwrap();
    let out = d.path().join("w.csv");
    let res = gcol(&[
        "wcol",
        "--input",
        s(&graphs),
        "--output",
        s(&out),
        "--radius",
        "1,2",
        "--algorithms",
        "degeneracy,dtf",
        "--local-search",
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "graph,n,m,group,algorithm,radius,wcol,seed,timeout");
    assert_eq!(csv.lines().count(), 1 + 3 * 2 * 4);
    assert!(!csv.contains("bad"));
    for side in ["w.timing.csv", "w.ratios.csv", "w.summary.csv"] {
        assert!(d.path().join(side).exists(), "{side}");
    }
    assert!(!d.path().join("w.flat.csv").exists());

    let st = d.path().join("stats.csv");
    let res = gcol(&["stats", "--input", s(&graphs), "--results", s(&out), "--output", s(&st)]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&st).unwrap();
    assert_eq!(text.lines().next().unwrap(), ",n,m,avg_degree,max_degree,wcol_1,wcol_2");
    assert!(text.lines().nth(1).unwrap().starts_with("n,1.000000"));
}

#[test]
fn unknown_algorithm_is_an_error() {
    let d = tempfile::tempdir().unwrap();
    let g = d.path().join("g.txt");
    std::fs::write(&g, "0 1\n").unwrap();
    let res = gcol(&["wcol", "--input", s(&g), "--output", s(&d.path().join("o.csv")), "--algorithms", "nope"]);
    assert_eq!(res.status.code(), Some(2));
    let res = gcol(&["uqw", "--input", s(&g), "--output", s(&d.path().join("o.csv")), "--algorithms", "tree9"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn uqw_writes_totals() {
    let d = tempfile::tempdir().unwrap();
    let g = d.path().join("star.txt");
    std::fs::write(&g, "0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n0 7\n0 8\n0 9\n").unwrap();
    let out = d.path().join("u.csv");
    let res = gcol(&["uqw", "--input", s(&g), "--output", s(&out), "--radius", "2", "--algorithms", "ld"]);
    assert!(res.status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().nth(1).unwrap(), "star,10,9,small,ld,2,full,10,1,9,9,0,false");
    let totals = std::fs::read_to_string(d.path().join("u.totals.csv")).unwrap();
    assert_eq!(totals.lines().nth(1).unwrap(), "2,full,ld,1,1,9,9,0");
}
