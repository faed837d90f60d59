//! One-shot verification checklist. Ten checks cross different evaluation
//! routes against each other and against frozen reference values, on seeded
//! corpora, so the whole table is deterministic and finishes in well under
//! a minute.

use stepgraphon::commonness::{asymptotic_rate, eps_scan, lemma_check, ratio_certificate};
use stepgraphon::density::{
    book_mono_closed, closed_form_weps, degree_profile, goodman_triangle, hom_density_forest,
    star_hom_closed, star_mono_closed, DEFAULT_TERM_BUDGET,
};
use stepgraphon::neighborhood::{holder_check, tree_apex_chain};
use stepgraphon::{Graph, Rat, Scalar, StepGraphon};

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, check) in self.checks.iter().enumerate() {
            let verdict = if check.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("{:>2}  {:<46} {verdict}\n", i + 1, check.name));
            if !check.pass && !check.detail.is_empty() {
                out.push_str(&format!("    -> {}\n", check.detail));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        if failed == 0 {
            out.push_str(&format!("all {} checks passed\n", self.checks.len()));
        } else {
            out.push_str(&format!(
                "{failed} of {} checks FAILED\n",
                self.checks.len()
            ));
        }
        out
    }
}

pub fn run() -> VerifyReport {
    VerifyReport {
        checks: vec![
            check_triangle_identity(),
            check_star_offsets(),
            check_proved_ratio_range(),
            check_book_power_chain(),
            check_fourth_moment(),
            check_holder_step(),
            check_apex_chain(),
            check_family_closed_forms(),
            check_frozen_instance(),
            check_asymptotic_rate(),
        ],
    }
}

fn pass(name: &'static str) -> Check {
    Check {
        name,
        pass: true,
        detail: String::new(),
    }
}

fn fail(name: &'static str, detail: String) -> Check {
    Check {
        name,
        pass: false,
        detail,
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

/// Triangle density from codegrees equals the closed form in the edge
/// density, exactly on rationals and within 1e-12 on floats.
fn check_triangle_identity() -> Check {
    const NAME: &str = "triangle identity on random graphons";
    for (i, w) in exact_corpus(40, 4, 12).iter().enumerate() {
        if book_mono_closed(1, w) != goodman_triangle(w) {
            return fail(NAME, format!("exact corpus entry {i}"));
        }
    }
    for (i, w) in float_corpus(200, 5).iter().enumerate() {
        let gap = (book_mono_closed(1, w) - goodman_triangle(w)).abs();
        if gap > 1e-12 {
            return fail(NAME, format!("float corpus entry {i}: gap {gap:e}"));
        }
    }
    pass(NAME)
}

/// Star densities three ways: the degree closed form, the half-plus-offset
/// form, and the forest engine on both colors. Also the floor 2^(1-k).
fn check_star_offsets() -> Check {
    const NAME: &str = "star density from degree offsets";
    for (i, w) in exact_corpus(40, 4, 10).iter().enumerate() {
        let profile = degree_profile(w);
        let comp = w.complement();
        for k in 1u32..=6 {
            let closed = star_mono_closed(k, w);
            let mut offsets = Rat::from_int(0);
            for (a, h) in w.weights().iter().zip(&profile.offsets) {
                let up = (Rat::half() + h.clone()).powu(k);
                let down = (Rat::half() - h.clone()).powu(k);
                offsets = offsets + a.clone() * (up + down);
            }
            let star = Graph::star(k as usize);
            let forest = hom_density_forest(&star, w).expect("star is a forest")
                + hom_density_forest(&star, &comp).expect("star is a forest");
            if closed != offsets || closed != forest {
                return fail(NAME, format!("exact corpus entry {i}, k = {k}"));
            }
            if closed < Rat::pow2(1 - k as i32) {
                return fail(NAME, format!("entry {i}, k = {k}: below 2^(1-k)"));
            }
        }
    }
    pass(NAME)
}

/// The ratio bound in the proved range k = 1..=5, on a thousand float
/// graphons, an exact corpus, and exact family members.
fn check_proved_ratio_range() -> Check {
    const NAME: &str = "ratio bound across the proved range";
    for (i, w) in float_corpus(1000, 5).iter().enumerate() {
        if let Err(e) = lemma_check(w) {
            return fail(NAME, format!("float corpus entry {i}: {e}"));
        }
    }
    for (i, w) in exact_corpus(40, 4, 10).iter().enumerate() {
        if let Err(e) = lemma_check(w) {
            return fail(NAME, format!("exact corpus entry {i}: {e}"));
        }
    }
    for (num, den) in [(0i64, 1i64), (1, 20), (1, 8)] {
        let w = StepGraphon::w_epsilon(Rat::from_ratio(num, den)).expect("in range");
        if let Err(e) = lemma_check(&w) {
            return fail(NAME, format!("family eps = {num}/{den}: {e}"));
        }
    }
    pass(NAME)
}

/// Book density chain: m(T_1) matches the offset second moment exactly,
/// and m(T_k) >= m(T_1)^k >= 2^(-2k) + 3k 2^(2-2k) H for H the second
/// moment of the degree offset.
fn check_book_power_chain() -> Check {
    const NAME: &str = "book density power chain";
    for (i, w) in exact_corpus(30, 4, 12).iter().enumerate() {
        let profile = degree_profile(w);
        let mut h2 = Rat::from_int(0);
        for (a, h) in w.weights().iter().zip(&profile.offsets) {
            h2 = h2 + a.clone() * h.clone() * h.clone();
        }
        let m1 = book_mono_closed(1, w);
        if m1 != Rat::from_ratio(1, 4) + Rat::from_int(3) * h2.clone() {
            return fail(NAME, format!("entry {i}: second moment form"));
        }
        for k in 1u32..=6 {
            let mk = book_mono_closed(k, w);
            let power = m1.powu(k);
            let bernoulli = Rat::pow2(-2 * k as i32)
                + Rat::from_int(3 * k as i64) * Rat::pow2(2 - 2 * k as i32) * h2.clone();
            if mk < power || power < bernoulli {
                return fail(NAME, format!("entry {i}, k = {k}"));
            }
        }
    }
    pass(NAME)
}

/// Degree offsets stay in [-1/2, 1/2], so the fourth moment is at most a
/// quarter of the second, blockwise and integrated.
fn check_fourth_moment() -> Check {
    const NAME: &str = "fourth moment of the degree offset";
    for (i, w) in exact_corpus(40, 4, 16).iter().enumerate() {
        let profile = degree_profile(w);
        let mut h2 = Rat::from_int(0);
        let mut h4 = Rat::from_int(0);
        for (j, (a, h)) in w.weights().iter().zip(&profile.offsets).enumerate() {
            if h.abs_val() > Rat::half() {
                return fail(NAME, format!("entry {i}, block {j}: offset out of range"));
            }
            let sq = h.clone() * h.clone();
            if sq.clone() * sq.clone() > sq.clone() * Rat::from_ratio(1, 4) {
                return fail(NAME, format!("entry {i}, block {j}: blockwise bound"));
            }
            h2 = h2 + a.clone() * sq.clone();
            h4 = h4 + a.clone() * sq.clone() * sq;
        }
        if h4 > h2 * Rat::from_ratio(1, 4) {
            return fail(NAME, format!("entry {i}: integrated bound"));
        }
    }
    pass(NAME)
}

/// The interpolation step between profile integrals, swept over k and n,
/// with the equality cases n = 2 and the constant one-half graphon.
fn check_holder_step() -> Check {
    const NAME: &str = "interpolation step across profiles";
    for (i, w) in float_corpus(60, 4).iter().enumerate() {
        for k in 1u32..=4 {
            for n in 2u32..=6 {
                match holder_check(w, k, n) {
                    Ok(hc) => {
                        if !hc.ok {
                            return fail(
                                NAME,
                                format!("entry {i}, k = {k}, n = {n}: {} > {}", hc.lhs, hc.rhs),
                            );
                        }
                        if n == 2 && (hc.lhs - hc.rhs).abs() > 1e-12 {
                            return fail(NAME, format!("entry {i}, k = {k}: n = 2 equality"));
                        }
                    }
                    Err(e) => return fail(NAME, format!("entry {i}: {e}")),
                }
            }
        }
    }
    let half = StepGraphon::constant(0.5).expect("in range");
    for k in 1u32..=4 {
        for n in 2u32..=6 {
            let hc = holder_check(&half, k, n).expect("within budget");
            if (hc.lhs - hc.rhs).abs() > 1e-12 {
                return fail(NAME, format!("constant 1/2, k = {k}, n = {n}: equality"));
            }
        }
    }
    for p in [0.2f64, 0.9] {
        let w = StepGraphon::constant(p).expect("in range");
        for k in 1u32..=4 {
            for n in 2u32..=6 {
                let hc = holder_check(&w, k, n).expect("within budget");
                if !hc.ok {
                    return fail(NAME, format!("constant {p}, k = {k}, n = {n}"));
                }
            }
        }
    }
    pass(NAME)
}

/// The two-step chain for apices of every tree on at most five vertices:
/// ratio lower bound <= profile integral <= apex density, and the
/// 2^(2-(k+1)n) target inside the proved range. At the constant one-half
/// graphon all four quantities coincide exactly.
fn check_apex_chain() -> Check {
    const NAME: &str = "apex chain for all trees up to five vertices";
    let floats = float_corpus(12, 3);
    let exacts = exact_corpus(2, 2, 6);
    let half = StepGraphon::<Rat>::constant(Rat::half()).expect("in range");
    for n in 2usize..=5 {
        for (t, tree) in Graph::small_trees(n).expect("n <= 5").iter().enumerate() {
            for k in 1u32..=3 {
                for (i, w) in floats.iter().enumerate() {
                    let report = tree_apex_chain(tree, k, w, DEFAULT_TERM_BUDGET)
                        .expect("tree within budget");
                    if !report.chain_holds() {
                        return fail(NAME, format!("n = {n} tree {t}, k = {k}, float {i}: chain"));
                    }
                    if !report.meets_target() {
                        return fail(NAME, format!("n = {n} tree {t}, k = {k}, float {i}: target"));
                    }
                }
                for (i, w) in exacts.iter().enumerate() {
                    let report = tree_apex_chain(tree, k, w, DEFAULT_TERM_BUDGET)
                        .expect("tree within budget");
                    if !report.chain_holds() || !report.meets_target() {
                        return fail(NAME, format!("n = {n} tree {t}, k = {k}, exact {i}"));
                    }
                }
            }
            for k in 1u32..=2 {
                let report =
                    tree_apex_chain(tree, k, &half, DEFAULT_TERM_BUDGET).expect("within budget");
                let all_equal = report.lower == report.integral
                    && report.integral == report.apex_mono
                    && report.apex_mono == report.target;
                if !all_equal {
                    return fail(NAME, format!("n = {n} tree {t}, k = {k}: half equality"));
                }
            }
        }
    }
    pass(NAME)
}

/// The four closed forms of the family agree with the generic block
/// formulas and the forest engine, exactly at three rational eps and to
/// 1e-9 relative error on floats.
fn check_family_closed_forms() -> Check {
    const NAME: &str = "family closed forms against the engines";
    for (num, den) in [(1i64, 20i64), (1, 8), (1, 4)] {
        let eps = Rat::from_ratio(num, den);
        let w = StepGraphon::w_epsilon(eps.clone()).expect("in range");
        let comp = w.complement();
        for k in 1u32..=12 {
            let cf = closed_form_weps(k, &eps).expect("in range");
            let star = Graph::star(k as usize);
            let star_forest = hom_density_forest(&star, &w).expect("forest");
            let star_forest_comp = hom_density_forest(&star, &comp).expect("forest");
            let ok = cf.t_sk_w == star_hom_closed(k, &w)
                && cf.t_sk_comp == star_hom_closed(k, &comp)
                && cf.t_sk_w == star_forest
                && cf.t_sk_comp == star_forest_comp
                && cf.mono_tk() == book_mono_closed(k, &w);
            if !ok {
                return fail(NAME, format!("eps = {num}/{den}, k = {k}"));
            }
        }
    }
    let eps = 0.05f64;
    let w = StepGraphon::w_epsilon(eps).expect("in range");
    for k in 1u32..=12 {
        let cf = closed_form_weps(k, &eps).expect("in range");
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
        if rel(cf.t_sk_w, star_hom_closed(k, &w)) > 1e-9
            || rel(cf.mono_tk(), book_mono_closed(k, &w)) > 1e-9
        {
            return fail(NAME, format!("float eps = 0.05, k = {k}"));
        }
    }
    pass(NAME)
}

/// The frozen k = 12, eps = 1/20 instance: printed float digits, exact
/// fractions, the strict verdict, and the first violating k per eps.
fn check_frozen_instance() -> Check {
    const NAME: &str = "frozen instance digits and verdicts";
    let wf = StepGraphon::w_epsilon(0.05f64).expect("in range");
    let cf = ratio_certificate(12, &wf);
    let digits = [
        (format!("{:.4e}", cf.m_tk), "2.4849e-6"),
        (format!("{:.4e}", cf.m_sk), "3.0980e-2"),
        (format!("{:.3e}", cf.ratio), "8.021e-5"),
        (format!("{:.3e}", cf.threshold), "1.221e-4"),
    ];
    for (got, want) in &digits {
        if got != want {
            return fail(NAME, format!("float digits: got {got}, want {want}"));
        }
    }
    if cf.holds {
        return fail(NAME, "float verdict should be violated".to_string());
    }
    let we = StepGraphon::w_epsilon(Rat::from_ratio(1, 20)).expect("in range");
    let ce = ratio_certificate(12, &we);
    let want_ratio: Rat = Scalar::parse("432732481476644793/5394958236859340192840").expect("rational");
    if ce.ratio != want_ratio || ce.holds || ce.ratio >= Rat::pow2(-13) {
        return fail(NAME, "exact certificate mismatch".to_string());
    }
    let eps = [
        Rat::from_int(0),
        Rat::from_ratio(1, 20),
        Rat::from_ratio(1, 8),
    ];
    let table = eps_scan(&eps, 12).expect("in range");
    let firsts: Vec<Option<u32>> = table.first_violation.iter().map(|(_, f)| *f).collect();
    if firsts != vec![None, Some(11), None] {
        return fail(NAME, format!("first violations: {firsts:?}"));
    }
    pass(NAME)
}

/// The growth rate of the ratio: the closed expression at eps = 1/8, and
/// the empirical rate at k = 200 within 0.01 of it.
fn check_asymptotic_rate() -> Check {
    const NAME: &str = "asymptotic rate of the family";
    let want = (10f64 / 21.0).ln();
    match asymptotic_rate(0.125) {
        Ok(rate) => {
            if (rate - want).abs() > 1e-15 {
                return fail(NAME, format!("closed rate {rate} vs {want}"));
            }
        }
        Err(e) => return fail(NAME, format!("eps = 1/8 rejected: {e}")),
    }
    if asymptotic_rate(0.0).is_ok() || asymptotic_rate(0.4).is_ok() {
        return fail(NAME, "domain endpoints should be rejected".to_string());
    }
    let eps = Rat::from_ratio(1, 8);
    let cf = closed_form_weps(200, &eps).expect("in range");
    let ratio = (cf.mono_tk() / cf.mono_sk()).to_f64();
    let empirical = ratio.ln() / 200.0;
    if (empirical - want).abs() > 0.01 {
        return fail(NAME, format!("empirical rate {empirical} vs {want}"));
    }
    pass(NAME)
}
