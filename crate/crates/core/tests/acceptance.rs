//! Acceptance criteria. Each test prints one `[PASS]`/`[FAIL]` line to
//! stderr (bypassing the harness capture) before asserting.

mod common;

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use separability::measures::{self, near_hit_from, near_miss_from, si_from};
use separability::neighbors::{BruteForce, KdIndex, NeighborSearch};
use separability::select::{exhaustive_search, greedy_forward_search, Criterion, SearchOptions};
use separability::synth::{self, ClusterPair, SweepConfig};
use separability::{hybrid_sequence, ExclusionRule};

fn verdict(id: u32, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[{tag}] criterion {id}: {detail}");
}

/// Rows of the published simulation subset: (si, hm, hm_ratio, hybrid %).
const TABLE: [(f64, f64, f64, f64); 14] = [
    (0.908, 1.5431, 0.0, 90.8046),
    (0.9368, 1.962, 0.0, 93.6782),
    (0.954, 2.4002, 0.0, 95.4023),
    (0.9598, 2.8622, 0.0, 95.977),
    (0.9828, 3.3595, 0.0, 98.2759),
    (0.9885, 3.8828, 0.0, 98.8506),
    (1.0, 4.4158, 1.0, 100.0),
    (1.0, 4.952, 1.1214, 112.1431),
    (1.0, 5.4955, 1.2445, 124.4502),
    (1.0, 6.0419, 1.3682, 136.8238),
    (1.0, 6.5924, 1.4929, 149.2898),
    (1.0, 7.1469, 1.6185, 161.8487),
    (1.0, 7.7037, 1.7446, 174.457),
    (1.0, 8.2627, 1.8712, 187.1161),
];

/// Every SI in the table is a multiple of 1/174.
const TABLE_N: usize = 174;

fn table_steps() -> Vec<(usize, usize, f64)> {
    TABLE
        .iter()
        .map(|&(si, hm, _, _)| ((si * TABLE_N as f64).round() as usize, TABLE_N, hm))
        .collect()
}

#[test]
fn criterion_1_table_arithmetic() {
    const TOL: f64 = 1e-3;
    let recs = hybrid_sequence(&table_steps()).unwrap();
    let mut worst_ratio: (f64, usize) = (0.0, 0);
    let mut worst_hybrid: (f64, usize) = (0.0, 0);
    let mut failures = Vec::new();
    for (row, (rec, &(_, _, ratio, hybrid))) in recs.iter().zip(&TABLE).enumerate() {
        let e_ratio = (rec.hm_ratio - ratio).abs();
        let e_hybrid = (rec.hybrid - hybrid).abs();
        if e_ratio > worst_ratio.0 {
            worst_ratio = (e_ratio, row);
        }
        if e_hybrid > worst_hybrid.0 {
            worst_hybrid = (e_hybrid, row);
        }
        if e_ratio > TOL {
            failures.push(format!(
                "row {} hm_ratio {} vs {} (err {:.2e})",
                row + 1,
                rec.hm_ratio,
                ratio,
                e_ratio
            ));
        }
        if e_hybrid > TOL {
            failures.push(format!(
                "row {} hybrid {} vs {} (err {:.2e})",
                row + 1,
                rec.hybrid,
                hybrid,
                e_hybrid
            ));
        }
    }
    let pass = failures.is_empty();
    verdict(
        1,
        pass,
        &format!(
            "table reproduction within {TOL:e}: worst hm_ratio err {:.2e} (row {}), worst hybrid err {:.2e} (row {}){}",
            worst_ratio.0,
            worst_ratio.1 + 1,
            worst_hybrid.0,
            worst_hybrid.1 + 1,
            if pass { String::new() } else { format!("; out of tolerance: {}", failures.join("; ")) }
        ),
    );
    assert!(pass, "{failures:?}");
}

#[test]
fn criterion_2_threshold_exactness() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0usize;
    for _ in 0..5000 {
        let len = rng.random_range(1..30);
        let seq: Vec<(usize, usize, f64)> = (0..len)
            .map(|_| {
                let n = rng.random_range(2..500);
                let hits = if rng.random_bool(0.5) {
                    n
                } else {
                    rng.random_range(0..n)
                };
                let hm = 10f64.powf(rng.random_range(-8.0..8.0));
                (hits, n, hm)
            })
            .collect();
        let recs = hybrid_sequence(&seq).unwrap();
        let mut prev_full = false;
        for (rec, &(hits, n, _)) in recs.iter().zip(&seq) {
            let full = hits == n;
            if full && !prev_full {
                assert_eq!(rec.hm_ratio, 1.0);
                assert_eq!(rec.hybrid, 100.0);
                checked += 1;
            }
            prev_full = full;
        }
    }
    let table = hybrid_sequence(&table_steps()).unwrap();
    assert_eq!((table[6].hm_ratio, table[6].hybrid), (1.0, 100.0));
    verdict(
        2,
        true,
        &format!("{checked} first-capture steps all report hm_ratio = 1 and hybrid = 100 exactly"),
    );
}

#[test]
fn criterion_3_oracle_equivalence() {
    let start = Instant::now();
    let mut queries = 0usize;
    for seed in 0..1000u64 {
        let ds = common::random_trial(seed);
        let (kd, bf) = (KdIndex::build(&ds), BruteForce::new(&ds));
        assert_eq!(
            si_from(&kd).unwrap(),
            si_from(&bf).unwrap(),
            "SI, dataset {seed}"
        );
        for i in 0..ds.n() {
            assert_eq!(
                kd.nearest(i, ExclusionRule::SelfOnly).unwrap(),
                bf.nearest(i, ExclusionRule::SelfOnly).unwrap()
            );
            assert_eq!(
                near_hit_from(&kd, i).unwrap(),
                near_hit_from(&bf, i).unwrap(),
                "hit {seed}/{i}"
            );
            assert_eq!(
                near_miss_from(&kd, i).unwrap(),
                near_miss_from(&bf, i).unwrap(),
                "miss {seed}/{i}"
            );
        }
        let (hm_kd, m_kd) = measures::hm_from(&kd).unwrap();
        let (hm_bf, m_bf) = measures::hm_from(&bf).unwrap();
        assert_eq!(hm_kd.to_bits(), hm_bf.to_bits(), "HM, dataset {seed}");
        assert_eq!(m_kd, m_bf);
        queries += ds.n();
    }
    let elapsed = start.elapsed();
    let pass = elapsed.as_secs_f64() < 60.0;
    verdict(
        3,
        pass,
        &format!("1000 datasets, {queries} instances: SI, near-hit, near-miss, HM identical ({elapsed:.1?})"),
    );
    assert!(pass, "took {elapsed:?}");
}

#[test]
fn criterion_4_overlap_baseline() {
    let sis: Vec<f64> = (0..20)
        .map(|seed| {
            let ds = synth::gaussian_clusters(500, 2, 1.0, 0.0, seed).unwrap();
            measures::separability_index(&ds).unwrap().fraction()
        })
        .collect();
    let mean = sis.iter().sum::<f64>() / sis.len() as f64;
    let pass = (mean - 0.5).abs() <= 0.06;
    verdict(
        4,
        pass,
        &format!("coincident clusters, 20 seeds: mean SI {mean:.4} (target 0.5 ± 0.06)"),
    );
    assert!(pass);
}

#[test]
fn criterion_5_sweep_shape() {
    let cfg = SweepConfig::default();
    assert_eq!(cfg.n_per_class * 2, 174);
    assert_eq!(cfg.dims, 2);
    let recs = synth::separation_sweep(&cfg).unwrap();
    let pair = ClusterPair::sample(cfg.n_per_class, cfg.dims, cfg.sigma, cfg.seed).unwrap();
    let disjoint_at = pair.disjoint_beyond();

    // SI nondecreasing and HM strictly increasing once every cross-class
    // projection along the sweep axis is positive.
    let disjoint: Vec<_> = recs.iter().filter(|r| r.distance > disjoint_at).collect();
    assert!(disjoint.len() >= 2, "sweep must reach the disjoint regime");
    for w in disjoint.windows(2) {
        assert!(w[1].si >= w[0].si);
        assert!(w[1].hm > w[0].hm);
    }

    let first_full = recs
        .iter()
        .position(|r| r.si_hits == r.n)
        .expect("SI saturates");
    assert_eq!(recs[first_full].si, 1.0);
    assert_eq!(recs[first_full].hybrid, 100.0);
    for r in &recs {
        if r.si_hits < r.n {
            assert_eq!(r.hybrid, 100.0 * r.si);
        }
    }
    // From the last capture onward SI stays at 1 and the hybrid rises past 100.
    let last_capture = recs
        .iter()
        .rposition(|r| r.si_hits == r.n && r.hybrid == 100.0)
        .unwrap();
    let tail = &recs[last_capture..];
    assert!(tail.iter().all(|r| r.si == 1.0));
    for w in tail.windows(2) {
        assert!(w[1].hybrid > w[0].hybrid);
    }
    let last = recs.last().unwrap();
    assert!(last.hybrid > 100.0);
    assert!(recs[0].si < 1.0);

    verdict(
        5,
        true,
        &format!(
            "N=174 sweep: SI {:.3} -> 1 at distance {}, disjoint beyond {:.3}, final hybrid {:.2}",
            recs[0].si, recs[first_full].distance, disjoint_at, last.hybrid
        ),
    );
}

#[test]
fn criterion_6_hybrid_margin_scaling_bit_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut sequences = vec![table_steps()];
    for _ in 0..200 {
        let len = rng.random_range(1..20);
        sequences.push(
            (0..len)
                .map(|_| {
                    let n = rng.random_range(2..300);
                    let hits = if rng.random_bool(0.6) {
                        n
                    } else {
                        rng.random_range(0..n)
                    };
                    (hits, n, rng.random_range(0.01..1e3))
                })
                .collect(),
        );
    }
    let factors: Vec<f64> = (0..50)
        .map(|_| 10f64.powf(rng.random_range(-6.0..6.0)))
        .collect();

    let mut trials = 0usize;
    let mut mismatched = 0usize;
    let mut pow2_mismatched = 0usize;
    for seq in &sequences {
        let base = hybrid_sequence(seq).unwrap();
        let differs = |c: f64| {
            let scaled: Vec<_> = seq.iter().map(|&(h, n, hm)| (h, n, c * hm)).collect();
            hybrid_sequence(&scaled)
                .unwrap()
                .iter()
                .zip(&base)
                .any(|(a, b)| {
                    a.hm_ratio.to_bits() != b.hm_ratio.to_bits()
                        || a.hybrid.to_bits() != b.hybrid.to_bits()
                })
        };
        for &c in &factors {
            trials += 1;
            mismatched += usize::from(differs(c));
        }
        for e in -20..=20 {
            pow2_mismatched += usize::from(differs(2f64.powi(e)));
        }
    }
    let pass = mismatched == 0 && pow2_mismatched == 0;
    verdict(
        6,
        pass,
        &format!(
            "hm scaled by c: {mismatched}/{trials} (sequence, c) pairs not bit-identical for arbitrary c; \
             {pow2_mismatched} for powers of two"
        ),
    );
    assert!(pass);
}

#[derive(Default)]
struct ScalingTally {
    cases: usize,
    si_changed: usize,
    index_changed: usize,
    worst_hm_rel: f64,
}

impl ScalingTally {
    fn clean(&self) -> bool {
        self.si_changed == 0 && self.index_changed == 0 && self.worst_hm_rel <= 1e-12
    }
}

impl std::fmt::Display for ScalingTally {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} cases, SI changed {}, index changed {}, worst HM rel err {:.1e}",
            self.cases, self.si_changed, self.index_changed, self.worst_hm_rel
        )
    }
}

#[test]
fn criterion_6_feature_scaling() {
    let factors: [f64; 7] = [1e-3, 0.37, 3.0, 11.5, 2.5e4, 0.25, 8.0];
    // [grid][power of two]
    let mut tally: [[ScalingTally; 2]; 2] = Default::default();
    for seed in 0..100u64 {
        let ds = common::random_trial(seed);
        let grid = common::random_shape(seed).3;
        let base_idx = KdIndex::build(&ds);
        let base = measures::measure(&ds).unwrap();
        for c in factors {
            let t = &mut tally[usize::from(grid)][usize::from(c.log2().fract() == 0.0)];
            let scaled = ds.map_features(|_, v| c * v).unwrap();
            let idx = KdIndex::build(&scaled);
            let rep = measures::measure(&scaled).unwrap();
            t.cases += 1;
            t.si_changed += usize::from(rep.si_hits != base.si_hits);
            let mut moved = false;
            for i in 0..ds.n() {
                for rule in [
                    ExclusionRule::SelfOnly,
                    ExclusionRule::same_class(&ds, i),
                    ExclusionRule::other_class(&ds, i),
                ] {
                    moved |= idx.nearest(i, rule).unwrap().index
                        != base_idx.nearest(i, rule).unwrap().index;
                }
            }
            t.index_changed += usize::from(moved);
            let rel = if base.hm == 0.0 {
                rep.hm.abs()
            } else {
                (rep.hm - c * base.hm).abs() / (c * base.hm).abs()
            };
            t.worst_hm_rel = t.worst_hm_rel.max(rel);
        }
    }
    let pass = tally.iter().flatten().all(ScalingTally::clean);
    verdict(
        6,
        pass,
        &format!(
            "features scaled by c: continuous data, arbitrary c: {}; continuous, power-of-two c: {}; \
             integer-grid data (exact distance ties), arbitrary c: {}; grid, power-of-two c: {}",
            tally[0][0], tally[0][1], tally[1][0], tally[1][1]
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_7_selection_recovery() {
    let ds = synth::informative_with_noise(100, 3, 1, 2024).unwrap();
    assert_eq!(ds.n(), 200);
    let opts = SearchOptions {
        criterion: Criterion::Si,
        ..Default::default()
    };
    let ex = exhaustive_search(&ds, opts).unwrap();
    let gr = greedy_forward_search(&ds, opts).unwrap();
    assert_eq!(ex.best_subset.indices(), [1]);
    assert_eq!(gr.best_subset.indices(), [1]);

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100u64 {
        let d = rng.random_range(1..=8);
        let classes = rng.random_range(2..=4);
        let n = rng.random_range(2 * classes..=80);
        let ds = common::random_dataset(1000 + trial, n, d, classes, rng.random_bool(0.3));
        let ex = exhaustive_search(&ds, opts).unwrap();
        let gr = greedy_forward_search(&ds, opts).unwrap();
        assert!(ex.best_score >= gr.best_score, "trial {trial}");
    }
    verdict(
        7,
        true,
        &format!(
            "informative feature {{1}} recovered by exhaustive and greedy; exhaustive >= greedy on 100 instances ({:.1?})",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_8_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let bin = env!("CARGO_BIN_EXE_separability");
    let data = dir.path().join("data.csv");
    synth::informative_with_noise(60, 4, 2, 3)
        .unwrap()
        .write_csv(std::fs::File::create(&data).unwrap(), false)
        .unwrap();
    let data = data.to_str().unwrap().to_string();

    let runs: Vec<(&str, Vec<String>)> = vec![
        (
            "measure",
            vec![
                "measure".into(),
                "--input".into(),
                data.clone(),
                "--margins-out".into(),
                "{out}".into(),
            ],
        ),
        (
            "sweep",
            vec![
                "sweep".into(),
                "--seed".into(),
                "5".into(),
                "--steps".into(),
                "30".into(),
                "--out".into(),
                "{out}".into(),
            ],
        ),
        (
            "select",
            vec![
                "select".into(),
                "--input".into(),
                data.clone(),
                "--strategy".into(),
                "exhaustive".into(),
                "--criterion".into(),
                "hybrid".into(),
                "--shared-hybrid-state".into(),
                "--out".into(),
                "{out}".into(),
            ],
        ),
        (
            "select-greedy",
            vec![
                "select".into(),
                "--input".into(),
                data.clone(),
                "--strategy".into(),
                "greedy".into(),
                "--out".into(),
                "{out}".into(),
            ],
        ),
    ];

    let mut names = Vec::new();
    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for attempt in 0..2 {
            let out = dir.path().join(format!("{name}-{attempt}.csv"));
            let args: Vec<String> = args
                .iter()
                .map(|a| {
                    if a == "{out}" {
                        out.to_str().unwrap().to_string()
                    } else {
                        a.clone()
                    }
                })
                .collect();
            let result = Command::new(bin).args(&args).output().unwrap();
            assert_eq!(
                result.status.code(),
                Some(0),
                "{name}: {}",
                String::from_utf8_lossy(&result.stderr)
            );
            outputs.push((result.stdout, std::fs::read(&out).unwrap()));
        }
        assert_eq!(outputs[0], outputs[1], "{name} differs between runs");
        names.push(*name);
    }
    verdict(
        8,
        true,
        &format!(
            "byte-identical output files and stdout across two runs: {}",
            names.join(", ")
        ),
    );
}
