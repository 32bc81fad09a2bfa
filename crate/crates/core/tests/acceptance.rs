//! End-to-end acceptance suite. Prints one `criterion N: PASS|FAIL` line per
//! criterion and fails if any criterion fails.
//!
//! Run with `cargo test -p tricup --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use tricup::cli::{parse_complex, run_capture};
use tricup::code::{distance, distance_with_table, subsystem_select, Method, SearchOptions, Weight};
use tricup::cupgate::{fountain_schedule, interaction_hypergraph, logical_action, synthesize_circuit};
use tricup::gf2::rank;
use tricup::homology::poincare_pairing_of;

const SEED: u64 = 2026;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn cli(args: &[&str]) -> (String, bool) {
    let (report, result) = run_capture(std::iter::once("tricup").chain(args.iter().copied()));
    (report, result.is_ok())
}

fn field<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix('='))
}

fn line<'a>(report: &'a str, key: &str) -> Option<&'a str> {
    report.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(' '))
}

fn within(elapsed: Duration, limit_secs: u64) -> bool {
    elapsed <= Duration::from_secs(limit_secs)
}

fn dimension_search() -> Verdict {
    let start = Instant::now();
    let (search, ok) = cli(&["search", "--qmax", "32"]);
    let rows: Vec<&str> = search.lines().filter(|l| !l.starts_with('#')).collect();
    let first_q = rows.first().and_then(|r| r.split(' ').next());
    let (bad, bad_ok) = cli(&["bad-dims", "--set", "9,16;12,22;15,19"]);
    let gaps = field(&bad, "gaps");
    let elapsed = start.elapsed();
    let pass = ok
        && bad_ok
        && first_q == Some("31")
        && rows.contains(&"31 9 16 12 22 15 19")
        && rows.contains(&"32 9 17 12 23 15 20")
        && gaps == Some("7,8,30,31,62,63,76")
        && field(&bad, "dim") == Some("93")
        && within(elapsed, 10);
    verdict(pass, format!("rows={rows:?} gaps={gaps:?} time={elapsed:.1?}"))
}

fn toric_ccz() -> Verdict {
    let start = Instant::now();
    let perms: BTreeSet<String> = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .iter()
        .map(|[a, b, c]| format!("entry {a} {b} {c}"))
        .collect();
    let mut pass = true;
    let mut detail = Vec::new();
    for l in [3, 4] {
        let spec = format!("circle:{l}*circle:{l}*circle:{l}");
        let (report, ok) = cli(&["logical-action", "--in", &spec]);
        let entries: BTreeSet<String> = report.lines().filter(|x| x.starts_with("entry")).map(String::from).collect();
        let good = ok
            && field(&report, "dims") == Some("3,3,3")
            && field(&report, "support") == Some("6")
            && entries == perms
            && field(&report, "cup_sum_crosscheck") == Some("pass");
        pass &= good;
        detail.push(format!("L={l} support={:?} ok={good}", field(&report, "support")));
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, 60);
    verdict(pass, format!("{} time={elapsed:.1?}", detail.join(" ")))
}

fn stokes_invariance() -> Verdict {
    let start = Instant::now();
    let seed = SEED.to_string();
    let mut pass = true;
    let mut detail = Vec::new();
    for spec in ["circle:3*circle:3*circle:3", "torus:3*torus:3*torus:3"] {
        let (report, ok) = cli(&["verify", "--in", spec, "--trials", "1000", "--seed", &seed]);
        let phase = line(&report, "phase").unwrap_or("");
        let stokes = line(&report, "stokes").unwrap_or("");
        let good = ok
            && phase.starts_with("trials=1000 passes=1000 ")
            && stokes.starts_with("trials=1000 passes=1000 ")
            && field(&report, "result") == Some("pass");
        pass &= good;
        detail.push(format!("{spec}: phase[{phase}] stokes[{stokes}]"));
    }
    let (control, _) = cli(&["verify", "--in", "circle:3*circle:3*circle:3", "--trials", "1000", "--seed", &seed, "--drop-top", "0"]);
    let failures: usize = line(&control, "phase")
        .and_then(|p| p.rsplit("failures=").next())
        .and_then(|f| f.parse().ok())
        .unwrap_or(0);
    pass &= failures > 0 && field(&control, "result") == Some("detected");
    let elapsed = start.elapsed();
    pass &= within(elapsed, 120);
    detail.push(format!("negative control failures={failures}"));
    verdict(pass, format!("{} time={elapsed:.1?}", detail.join("; ")))
}

fn closed_manifold_suite() -> Vec<String> {
    let mut specs: Vec<String> = (1..=6).map(|k| vec!["circle:3"; k].join("*")).collect();
    specs.extend(["torus:3", "torus:3*circle:3", "torus:3*torus:3", "torus:3*torus:3*torus:3"].map(String::from));
    specs
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poincare_and_kunneth() -> (Verdict, Verdict) {
    let start = Instant::now();
    let (mut poincare, mut kunneth) = (true, true);
    let (mut pd, mut kd) = (Vec::new(), Vec::new());
    for spec in closed_manifold_suite() {
        let loaded = parse_complex(&spec).expect("suite spec");
        let sc = &loaded.complex;
        let n = sc.dim();
        let betti = sc.chain_complex().expect("chain complex").betti_numbers();
        let predicted = loaded
            .factors
            .iter()
            .map(|f| f.chain_complex().expect("chain complex").betti_numbers())
            .reduce(|a, b| convolve(&a, &b))
            .expect("at least one factor");
        let k_ok = betti == predicted;
        kunneth &= k_ok;
        kd.push(format!("{spec}={betti:?}{}", if k_ok { "" } else { "!" }));

        let bases = loaded.bases(n).expect("bases");
        let mut full = sc.is_closed_manifold();
        for p in 0..=n {
            let m = poincare_pairing_of(sc, &bases[p], &bases[n - p]).expect("pairing");
            full &= m.rows() == betti[p] && m.cols() == betti[n - p] && rank(&m) == betti[p];
        }
        poincare &= full;
        pd.push(format!("{spec}:{}", if full { "full" } else { "DEFICIENT" }));
    }
    let elapsed = start.elapsed();
    poincare &= within(elapsed, 300);
    (
        verdict(poincare, format!("{} time={elapsed:.1?}", pd.join(" "))),
        verdict(kunneth, kd.join(" ")),
    )
}

fn toric_distance() -> Verdict {
    let start = Instant::now();
    let opts = SearchOptions { seed: SEED, ..SearchOptions::default() };
    let mut pass = true;
    let mut detail = Vec::new();
    for l in [3, 4, 5] {
        let code = parse_complex(&format!("torus:{l}")).unwrap().code(1).unwrap();
        let r = distance(&code, &opts).unwrap();
        let good = r.dz.weight == Weight::Exact(l) && r.dx.weight == Weight::Exact(l) && r.method() != Method::Randomized;
        pass &= good;
        detail.push(format!("L={l} dZ={:?} dX={:?}", r.dz.weight, r.dx.weight));
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, 300);
    verdict(pass, format!("{} time={elapsed:.1?}", detail.join(" ")))
}

fn subsystem_distance() -> Verdict {
    let opts = SearchOptions { seed: SEED, ..SearchOptions::default() };
    let c = 3;
    let mut pass = true;
    let mut detail = Vec::new();
    for l in [4, 5] {
        let code = parse_complex(&format!("csum:{l}:{c}")).unwrap().code(1).unwrap();
        let plain = distance_with_table(&code, &opts).unwrap();
        let large: Vec<usize> = plain
            .per_class
            .iter()
            .filter(|(_, z, _)| *z == Weight::Exact(l))
            .map(|(i, _, _)| *i)
            .collect();
        let small = plain.per_class.iter().filter(|(_, z, _)| *z == Weight::Exact(c)).count();
        let sub = subsystem_select(&code, &large).unwrap();
        let kept = distance(&sub, &opts).unwrap();
        let exhaustive = kept.dz.method != Method::Randomized;
        let good = code.k() == 4
            && large.len() == 2
            && small == 2
            && plain.d() == Weight::Exact(c)
            && kept.d() == Weight::Exact(l)
            && exhaustive;
        pass &= good;
        detail.push(format!(
            "L={l} K={} large={large:?} plain_d={:?} subsystem_d={:?} methodZ={}",
            code.k(),
            plain.d(),
            kept.d(),
            kept.dz.method.tag()
        ));
    }
    verdict(pass, detail.join("; "))
}

fn ccz_counting() -> Verdict {
    let start = Instant::now();
    let (report, ok) = cli(&["ccz-count", "--factors", "torus:3*torus:3*torus:3", "--q", "2", "--check", "all"]);
    let sizes_ok = ["alpha", "beta", "gamma"]
        .iter()
        .all(|f| report.lines().any(|l| l == format!("family {f} size=4")))
        && report.lines().any(|l| l == "family residual size=3");
    let orientations = [
        ["alpha", "beta", "gamma"],
        ["alpha", "gamma", "beta"],
        ["beta", "alpha", "gamma"],
        ["beta", "gamma", "alpha"],
        ["gamma", "alpha", "beta"],
        ["gamma", "beta", "alpha"],
    ];
    let aligned_ok = orientations
        .iter()
        .all(|[a, b, c]| report.lines().any(|l| l == format!("count {a} {b} {c} 8")));
    let elapsed = start.elapsed();
    let pass = ok
        && sizes_ok
        && aligned_ok
        && field(&report, "aligned") == Some("8")
        && field(&report, "checked") == Some("3375")
        && field(&report, "mismatches") == Some("0")
        && within(elapsed, 600);
    verdict(
        pass,
        format!(
            "sizes_ok={sizes_ok} aligned_ok={aligned_ok} total={:?} checked={:?} mismatches={:?} time={elapsed:.1?}",
            field(&report, "total"),
            field(&report, "checked"),
            field(&report, "mismatches")
        ),
    )
}

fn hypergraph_of(spec: &str, q: usize) -> tricup::cupgate::InteractionHypergraph {
    let loaded = parse_complex(spec).unwrap();
    let basis = loaded.bases(q).unwrap().swap_remove(q);
    let circuit = synthesize_circuit(&loaded.complex, q, q, q).unwrap();
    interaction_hypergraph(&logical_action(&circuit, [&basis, &basis, &basis]).unwrap())
}

fn pairwise_disjoint(edges: &[[usize; 3]]) -> bool {
    edges.iter().enumerate().all(|(i, e)| {
        edges[i + 1..]
            .iter()
            .all(|f| (0..3).all(|part| e[part] != f[part]))
    })
}

fn fountain() -> Verdict {
    let t3 = hypergraph_of("circle:3*circle:3*circle:3", 1);
    let s3 = fountain_schedule(&t3);
    let chosen: Vec<[usize; 3]> = s3.selected.iter().map(|&e| t3.edges[e]).collect();
    let t3_ok = s3.magic_count == 3 && chosen.len() == 3 && pairwise_disjoint(&chosen);

    let t6 = hypergraph_of("torus:3*torus:3*torus:3", 2);
    let s6 = fountain_schedule(&t6);
    let chosen6: Vec<[usize; 3]> = s6.selected.iter().map(|&e| t6.edges[e]).collect();
    let zero: BTreeSet<_> = s6.zero.iter().copied().collect();
    let selected: BTreeSet<usize> = s6.selected.iter().copied().collect();
    let stray = (0..t6.edges.len())
        .filter(|e| !selected.contains(e))
        .filter(|&e| (0..3).all(|part| !zero.contains(&(part, t6.edges[e][part]))))
        .count();
    let t6_ok = pairwise_disjoint(&chosen6) && stray == 0;
    verdict(
        t3_ok && t6_ok,
        format!(
            "T3 magic={} disjoint={}; T2(3)^3 edges={} magic={} zero_set={} unselected_edges_missing_zero_set={stray}",
            s3.magic_count,
            pairwise_disjoint(&chosen),
            t6.edges.len(),
            s6.magic_count,
            zero.len()
        ),
    )
}

fn determinism() -> Verdict {
    let seed = SEED.to_string();
    let runs: [&[&str]; 7] = [
        &["search", "--qmax", "32"],
        &["bad-dims", "--set", "9,16;12,22;15,19"],
        &["logical-action", "--in", "circle:3*circle:3*circle:3"],
        &["verify", "--in", "circle:3*circle:3*circle:3", "--trials", "200", "--seed", &seed],
        &["verify", "--in", "circle:3*circle:3*circle:3", "--trials", "200", "--seed", &seed, "--drop-top", "0"],
        &["distance", "--in", "csum:4:3", "--q", "1", "--seed", &seed],
        &["distance", "--in", "circle:3*circle:3*circle:3", "--q", "1", "--seed", &seed],
    ];
    let mut differing = Vec::new();
    for args in runs {
        let first = cli(args);
        let second = cli(args);
        if first != second || first.0.is_empty() {
            differing.push(args[0]);
        }
    }
    verdict(differing.is_empty(), format!("runs={} differing={differing:?}", runs.len()))
}

#[test]
fn acceptance_criteria() {
    let mut results: Vec<(usize, &str, Verdict)> = Vec::new();
    let mut record = |id: usize, name: &'static str, run: &mut dyn FnMut() -> Verdict| {
        let v = run();
        println!("criterion {id:>2} {}: {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        results.push((id, name, v));
    };
    record(1, "dimension search", &mut dimension_search);
    record(2, "toric CCZ logical action", &mut toric_ccz);
    record(3, "coboundary invariance", &mut stokes_invariance);
    let (poincare, kunneth) = poincare_and_kunneth();
    let mut poincare = Some(poincare);
    let mut kunneth = Some(kunneth);
    record(4, "Poincaré pairing", &mut || poincare.take().unwrap());
    record(5, "Künneth convolution", &mut || kunneth.take().unwrap());
    record(6, "toric code distance", &mut toric_distance);
    record(7, "subsystem distance", &mut subsystem_distance);
    record(8, "triple-product CCZ count", &mut ccz_counting);
    record(9, "fountain schedule", &mut fountain);
    record(10, "determinism", &mut determinism);

    let failed: Vec<usize> = results.iter().filter(|(_, _, v)| !v.pass).map(|(id, _, _)| *id).collect();
    println!("passed {}/{}", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
