//! End-to-end acceptance checks. Each test covers one criterion, prints a
//! single pass or fail line, and enforces its own wall-clock budget. The
//! corpora are seeded, so every run sees the same instances.

use std::time::{Duration, Instant};
use stepgraphon::commonness::{asymptotic_rate, ratio_certificate};
use stepgraphon::density::{
    book_mono_closed, closed_form_weps, goodman_triangle, hom_density_brute, star_hom_closed,
    star_mono_closed, DEFAULT_TERM_BUDGET,
};
use stepgraphon::neighborhood::{dk_integral, holder_check, tree_apex_chain};
use stepgraphon::optimize::{minimize_ratio, OptimizerConfig};
use stepgraphon::{Graph, Rat, Scalar, StepGraphon};

fn criterion(n: u32, name: &str, budget: Duration, body: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    match outcome {
        Ok(()) if elapsed <= budget => {
            println!("criterion {n} ({name}): pass [{elapsed:.2?}]");
        }
        Ok(()) => {
            println!("criterion {n} ({name}): FAIL [over budget: {elapsed:.2?}]");
            panic!("criterion {n} exceeded its {budget:?} budget: {elapsed:?}");
        }
        Err(e) => {
            println!("criterion {n} ({name}): FAIL [{e}]");
            panic!("criterion {n} failed: {e}");
        }
    }
}

fn float_corpus(count: usize, max_blocks: usize) -> Vec<StepGraphon<f64>> {
    (0..count)
        .map(|i| {
            let m = 2 + i % (max_blocks - 1);
            StepGraphon::random(m, i as u64).expect("positive block count")
        })
        .collect()
}

fn exact_corpus(count: usize, max_blocks: usize, denom: u32) -> Vec<StepGraphon<Rat>> {
    (0..count)
        .map(|i| {
            let m = 2 + i % (max_blocks - 1);
            StepGraphon::random_rational(m, denom, 1000 + i as u64).expect("positive block count")
        })
        .collect()
}

#[test]
fn criterion_1_exact_instance() {
    criterion(1, "exact k = 12 instance", Duration::from_secs(1), || {
        let w = StepGraphon::w_epsilon(Rat::from_ratio(1, 20)).map_err(|e| e.to_string())?;
        let cert = ratio_certificate(12, &w);
        let m_tk: Rat =
            Scalar::parse("144244160492214931/58047528960000000000000").expect("rational");
        let m_sk: Rat =
            Scalar::parse("134873955921483504821/4353564672000000000000").expect("rational");
        if cert.m_tk != m_tk {
            return Err("book side mismatch".to_string());
        }
        if cert.m_sk != m_sk {
            return Err("star side mismatch".to_string());
        }
        if cert.ratio != m_tk / m_sk {
            return Err("ratio mismatch".to_string());
        }
        if cert.threshold != Rat::pow2(-13) || cert.holds {
            return Err("verdict should be a strict exact violation".to_string());
        }
        let digits = [
            (format!("{:.4e}", cert.m_tk.to_f64()), "2.4849e-6"),
            (format!("{:.4e}", cert.m_sk.to_f64()), "3.0980e-2"),
        ];
        for (got, want) in digits {
            if got != want {
                return Err(format!("printed digits: got {got}, want {want}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_2_closed_forms_vs_engines() {
    criterion(2, "family closed forms", Duration::from_secs(5), || {
        for (num, den) in [(1i64, 20i64), (1, 8), (1, 4)] {
            let eps = Rat::from_ratio(num, den);
            let w = StepGraphon::w_epsilon(eps.clone()).map_err(|e| e.to_string())?;
            let comp = w.complement();
            for k in 1u32..=12 {
                let cf = closed_form_weps(k, &eps).map_err(|e| e.to_string())?;
                let ok = cf.t_sk_w == star_hom_closed(k, &w)
                    && cf.t_sk_comp == star_hom_closed(k, &comp)
                    && cf.mono_tk() == book_mono_closed(k, &w)
                    && cf.mono_sk() == star_mono_closed(k, &w);
                if !ok {
                    return Err(format!("exact eps = {num}/{den}, k = {k}"));
                }
            }
        }
        let eps = 0.05f64;
        let w = StepGraphon::w_epsilon(eps).map_err(|e| e.to_string())?;
        for k in 1u32..=12 {
            let cf = closed_form_weps(k, &eps).map_err(|e| e.to_string())?;
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
            if rel(cf.mono_tk(), book_mono_closed(k, &w)) > 1e-9
                || rel(cf.mono_sk(), star_mono_closed(k, &w)) > 1e-9
            {
                return Err(format!("float eps = 0.05, k = {k}"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_3_random_ratio_sweep() {
    criterion(3, "ratio bound on 1000 graphons", Duration::from_secs(30), || {
        for (i, w) in float_corpus(1000, 5).iter().enumerate() {
            for k in 1u32..=5 {
                let cert = ratio_certificate(k, w);
                if !cert.holds {
                    return Err(format!("entry {i}, k = {k}: ratio {}", cert.ratio));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_4_identity_suite() {
    criterion(4, "identity suite", Duration::from_secs(60), || {
        let triangle = Graph::book(1);
        for (i, w) in exact_corpus(10, 3, 8).iter().enumerate() {
            let comp = w.complement();
            let tri_brute = hom_density_brute(&triangle, w, DEFAULT_TERM_BUDGET)
                .map_err(|e| e.to_string())?
                + hom_density_brute(&triangle, &comp, DEFAULT_TERM_BUDGET)
                    .map_err(|e| e.to_string())?;
            if goodman_triangle(w) != tri_brute || book_mono_closed(1, w) != tri_brute {
                return Err(format!("entry {i}: triangle"));
            }
            for k in 1u32..=4 {
                let star = Graph::star(k as usize);
                let brute = hom_density_brute(&star, w, DEFAULT_TERM_BUDGET)
                    .map_err(|e| e.to_string())?
                    + hom_density_brute(&star, &comp, DEFAULT_TERM_BUDGET)
                        .map_err(|e| e.to_string())?;
                if star_mono_closed(k, w) != brute {
                    return Err(format!("entry {i}, k = {k}: star closed vs brute"));
                }
            }
            for k in 1u32..=3 {
                let book = Graph::book(k as usize);
                let brute = hom_density_brute(&book, w, DEFAULT_TERM_BUDGET)
                    .map_err(|e| e.to_string())?
                    + hom_density_brute(&book, &comp, DEFAULT_TERM_BUDGET)
                        .map_err(|e| e.to_string())?;
                if book_mono_closed(k, w) != brute {
                    return Err(format!("entry {i}, k = {k}: book closed vs brute"));
                }
            }
            for k in 1u32..=5 {
                let star_int =
                    dk_integral(w, k, 1, 0, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
                let book_int =
                    dk_integral(w, k, 2, 1, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
                if star_int != star_mono_closed(k, w) || book_int != book_mono_closed(k, w) {
                    return Err(format!("entry {i}, k = {k}: profile integrals"));
                }
            }
        }
        for (i, w) in float_corpus(50, 4).iter().enumerate() {
            let comp = w.complement();
            let tri_brute = hom_density_brute(&triangle, w, DEFAULT_TERM_BUDGET)
                .map_err(|e| e.to_string())?
                + hom_density_brute(&triangle, &comp, DEFAULT_TERM_BUDGET)
                    .map_err(|e| e.to_string())?;
            if (goodman_triangle(w) - tri_brute).abs() > 1e-12 {
                return Err(format!("float entry {i}: triangle"));
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_5_tree_apex_chain() {
    criterion(5, "apex chain for small trees", Duration::from_secs(120), || {
        let corpus = float_corpus(50, 3);
        for n in 2usize..=5 {
            for (t, tree) in Graph::small_trees(n)
                .map_err(|e| e.to_string())?
                .iter()
                .enumerate()
            {
                for k in 1u32..=3 {
                    for (i, w) in corpus.iter().enumerate() {
                        let report = tree_apex_chain(tree, k, w, DEFAULT_TERM_BUDGET)
                            .map_err(|e| e.to_string())?;
                        if !report.chain_holds() {
                            return Err(format!("n = {n} tree {t}, k = {k}, entry {i}: chain"));
                        }
                        if !report.meets_target() {
                            return Err(format!("n = {n} tree {t}, k = {k}, entry {i}: target"));
                        }
                    }
                }
                let half = StepGraphon::<Rat>::constant(Rat::half()).map_err(|e| e.to_string())?;
                let report =
                    tree_apex_chain(tree, 2, &half, DEFAULT_TERM_BUDGET).map_err(|e| e.to_string())?;
                let all_equal = report.lower == report.integral
                    && report.integral == report.apex_mono
                    && report.apex_mono == report.target;
                if !all_equal {
                    return Err(format!("n = {n} tree {t}: equality at one half"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_asymptotic_rate() {
    criterion(6, "asymptotic rate", Duration::from_secs(10), || {
        let want = asymptotic_rate(0.125).map_err(|e| e.to_string())?;
        if (want - (10f64 / 21.0).ln()).abs() > 1e-15 {
            return Err("closed expression value".to_string());
        }
        let cf = closed_form_weps(200, &Rat::from_ratio(1, 8)).map_err(|e| e.to_string())?;
        let empirical = (cf.mono_tk() / cf.mono_sk()).to_f64().ln() / 200.0;
        if (empirical - want).abs() > 0.01 {
            return Err(format!("empirical {empirical} vs closed {want}"));
        }
        Ok(())
    });
}

#[test]
fn criterion_7_interpolation_sweep() {
    criterion(7, "interpolation inequality", Duration::from_secs(60), || {
        for i in 0..500usize {
            let m = 2 + i % 3;
            let k = 1 + (i % 4) as u32;
            let n = 2 + (i % 5) as u32;
            let w = StepGraphon::random(m, 5000 + i as u64).map_err(|e| e.to_string())?;
            let hc = holder_check(&w, k, n).map_err(|e| e.to_string())?;
            if !hc.ok {
                return Err(format!("instance {i}: {} > {}", hc.lhs, hc.rhs));
            }
            if n == 2 && (hc.lhs - hc.rhs).abs() > 1e-12 {
                return Err(format!("instance {i}: n = 2 equality"));
            }
        }
        let half = StepGraphon::constant(0.5).map_err(|e| e.to_string())?;
        for k in 1u32..=4 {
            for n in 2u32..=6 {
                let hc = holder_check(&half, k, n).map_err(|e| e.to_string())?;
                if (hc.lhs - hc.rhs).abs() > 1e-12 {
                    return Err(format!("constant one half, k = {k}, n = {n}"));
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_8_optimizer_flip() {
    criterion(8, "optimizer verdicts", Duration::from_secs(300), || {
        let at_twelve = OptimizerConfig {
            k: 12,
            ..OptimizerConfig::default()
        };
        let result = minimize_ratio(&at_twelve).map_err(|e| e.to_string())?;
        if !result.violation_found {
            return Err("k = 12 search found no violation".to_string());
        }
        match &result.exact_recheck {
            Some(recheck) if !recheck.certificate.holds => {}
            _ => return Err("k = 12 violation not exactly confirmed".to_string()),
        }
        let at_one = OptimizerConfig {
            k: 1,
            ..OptimizerConfig::default()
        };
        let result = minimize_ratio(&at_one).map_err(|e| e.to_string())?;
        if result.violation_found || result.best_ratio < 0.25 - 1e-9 {
            return Err(format!("k = 1 dipped to {}", result.best_ratio));
        }
        Ok(())
    });
}

#[test]
fn criterion_9_cli_determinism() {
    criterion(9, "one binary, stable output", Duration::from_secs(120), || {
        let bin = env!("CARGO_BIN_EXE_stepgraphon");
        let mut outputs = Vec::new();
        for threads in ["1", "8"] {
            let out = std::process::Command::new(bin)
                .args(["--threads", threads, "verify"])
                .output()
                .map_err(|e| e.to_string())?;
            if !out.status.success() {
                return Err(format!(
                    "verify with {threads} threads exited {:?}",
                    out.status.code()
                ));
            }
            outputs.push(out.stdout);
        }
        if outputs[0] != outputs[1] {
            return Err("verify output differs across thread counts".to_string());
        }
        let text = String::from_utf8_lossy(&outputs[0]);
        if !text.contains("all 10 checks passed") {
            return Err("verify did not report a full pass".to_string());
        }
        Ok(())
    });
}
