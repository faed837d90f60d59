//! Homomorphism and monochromatic densities of small graphs in step
//! graphons. Three evaluation routes with very different cost profiles:
//! brute-force enumeration over all block assignments (any graph, budgeted),
//! a message-passing pass for forests, and closed forms for stars and
//! triangular books. A Monte Carlo estimator rounds out the float backend.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graphon::StepGraphon;
use crate::scalar::{Accumulator, Backend, Scalar};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Default cap on the number of terms a brute-force evaluation may expand.
pub const DEFAULT_TERM_BUDGET: u128 = 100_000_000;

/// Assignments per parallel chunk. Fixed so the reduction tree, and hence
/// every rounded float sum, is independent of the thread count.
const CHUNK: u64 = 1 << 14;

/// Evaluation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Closed form when the graph is a star or book, forest pass when it is
    /// a forest, brute force otherwise.
    #[default]
    Auto,
    Brute,
    Forest,
    Closed,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Auto => "auto",
            Method::Brute => "brute",
            Method::Forest => "forest",
            Method::Closed => "closed",
        };
        f.write_str(s)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "brute" => Ok(Method::Brute),
            "forest" => Ok(Method::Forest),
            "closed" => Ok(Method::Closed),
            other => Err(format!(
                "unknown method {other:?}, expected auto, brute, forest, or closed"
            )),
        }
    }
}

/// Both color classes of a density evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport<T: Scalar> {
    pub t_w: T,
    pub t_comp: T,
    pub mono: T,
    pub backend: Backend,
}

/// Block degrees `d_i` and their offsets `h_i = d_i - 1/2` from the balanced
/// value. Offsets always lie in `[-1/2, 1/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile<T: Scalar> {
    pub degrees: Vec<T>,
    pub offsets: Vec<T>,
}

/// Homomorphism density `t(G, W)` with an explicit strategy.
pub fn hom_density<T: Scalar>(
    g: &Graph,
    w: &StepGraphon<T>,
    method: Method,
    budget: u128,
) -> Result<T> {
    match method {
        Method::Brute => hom_density_brute(g, w, budget),
        Method::Forest => hom_density_forest(g, w),
        Method::Closed => {
            if let Some(k) = g.as_star() {
                Ok(star_hom_closed(k as u32, w))
            } else if let Some(k) = g.as_book() {
                Ok(book_hom_closed(k as u32, w))
            } else {
                Err(Error::NotClosedForm)
            }
        }
        Method::Auto => {
            if g.as_star().is_some() || g.as_book().is_some() {
                hom_density(g, w, Method::Closed, budget)
            } else if g.is_forest() {
                hom_density_forest(g, w)
            } else {
                hom_density_brute(g, w, budget)
            }
        }
    }
}

/// Both colors at once: `t(G, W)`, `t(G, 1-W)`, and their sum.
pub fn mono_density<T: Scalar>(
    g: &Graph,
    w: &StepGraphon<T>,
    method: Method,
    budget: u128,
) -> Result<DensityReport<T>> {
    let t_w = hom_density(g, w, method, budget)?;
    let t_comp = hom_density(g, &w.complement(), method, budget)?;
    let mono = t_w.clone() + t_comp.clone();
    Ok(DensityReport {
        t_w,
        t_comp,
        mono,
        backend: T::BACKEND,
    })
}

/// Sum over all `m^v` block assignments of the weight product times the
/// edge-value product. The term count is checked against `budget` before any
/// work happens.
pub fn hom_density_brute<T: Scalar>(g: &Graph, w: &StepGraphon<T>, budget: u128) -> Result<T> {
    let m = w.block_count();
    let v = g.vertex_count();
    let required = (m as u128)
        .checked_pow(v as u32)
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            allowed: budget,
        });
    }
    let total = u64::try_from(required).map_err(|_| Error::BudgetExceeded {
        required,
        allowed: u64::MAX as u128,
    })?;

    let weights = w.weights();
    let edges = g.edges();
    let term = |idx: u64, assignment: &mut [usize]| -> T {
        let mut rest = idx;
        for slot in assignment.iter_mut() {
            *slot = (rest % m as u64) as usize;
            rest /= m as u64;
        }
        let mut t = T::one();
        for &b in assignment.iter() {
            t = t * weights[b].clone();
        }
        for &(x, y) in edges {
            t = t * w.value(assignment[x], assignment[y]).clone();
        }
        t
    };

    let n_chunks = total.div_ceil(CHUNK).max(1);
    let partials: Vec<T> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut assignment = vec![0usize; v];
            let mut acc = T::Accum::default();
            for idx in lo..hi {
                acc.push(term(idx, &mut assignment));
            }
            acc.total()
        })
        .collect();
    let mut acc = T::Accum::default();
    for p in partials {
        acc.push(p);
    }
    Ok(acc.total())
}

/// Linear-size evaluation for forests: each component is rooted and leaf
/// messages `sum_b a_b W(., b) f(b)` are folded toward the root.
pub fn hom_density_forest<T: Scalar>(g: &Graph, w: &StepGraphon<T>) -> Result<T> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let m = w.block_count();
    let adj = g.adjacency_lists();
    let weights = w.weights();
    let mut total = T::one();
    for comp in g.components() {
        let root = comp[0];
        // BFS order; children are processed before parents on the way back
        let mut order = vec![root];
        let mut parent = vec![usize::MAX; g.vertex_count()];
        parent[root] = root;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &nb in &adj[u] {
                if parent[nb] == usize::MAX {
                    parent[nb] = u;
                    order.push(nb);
                }
            }
        }
        let mut f: Vec<Vec<T>> = vec![Vec::new(); g.vertex_count()];
        for &u in &order {
            f[u] = vec![T::one(); m];
        }
        for &u in order.iter().rev() {
            if u == root {
                continue;
            }
            // message from u to its parent, one entry per parent block
            let mut msg = vec![T::zero(); m];
            for (bp, slot) in msg.iter_mut().enumerate() {
                let mut acc = T::Accum::default();
                for b in 0..m {
                    acc.push(weights[b].clone() * w.value(bp, b).clone() * f[u][b].clone());
                }
                *slot = acc.total();
            }
            let p = parent[u];
            for b in 0..m {
                f[p][b] = f[p][b].clone() * msg[b].clone();
            }
        }
        let mut acc = T::Accum::default();
        for b in 0..m {
            acc.push(weights[b].clone() * f[root][b].clone());
        }
        total = total * acc.total();
    }
    Ok(total)
}

/// Block degrees of the graphon.
pub fn degree_profile<T: Scalar>(w: &StepGraphon<T>) -> DegreeProfile<T> {
    let m = w.block_count();
    let degrees: Vec<T> = (0..m)
        .map(|i| {
            let mut acc = T::Accum::default();
            for j in 0..m {
                acc.push(w.weight(j).clone() * w.value(i, j).clone());
            }
            acc.total()
        })
        .collect();
    let offsets = degrees.iter().map(|d| d.clone() - T::half()).collect();
    DegreeProfile { degrees, offsets }
}

/// `t(S_k, W) = sum_i a_i d_i^k` where `S_k` is the star with `k` leaves.
pub fn star_hom_closed<T: Scalar>(k: u32, w: &StepGraphon<T>) -> T {
    let profile = degree_profile(w);
    let mut acc = T::Accum::default();
    for (i, d) in profile.degrees.iter().enumerate() {
        acc.push(w.weight(i).clone() * d.powu(k));
    }
    acc.total()
}

/// `m(S_k, W) = sum_i a_i (d_i^k + (1 - d_i)^k)`.
pub fn star_mono_closed<T: Scalar>(k: u32, w: &StepGraphon<T>) -> T {
    let profile = degree_profile(w);
    let mut acc = T::Accum::default();
    for (i, d) in profile.degrees.iter().enumerate() {
        let comp = T::one() - d.clone();
        acc.push(w.weight(i).clone() * (d.powu(k) + comp.powu(k)));
    }
    acc.total()
}

/// Codegree of blocks `i` and `j`: `sum_l a_l W_il W_jl`.
pub fn codegree<T: Scalar>(w: &StepGraphon<T>, i: usize, j: usize) -> T {
    let m = w.block_count();
    let mut acc = T::Accum::default();
    for l in 0..m {
        acc.push(w.weight(l).clone() * w.value(i, l).clone() * w.value(j, l).clone());
    }
    acc.total()
}

/// `t(T_k, W) = sum_ij a_i a_j W_ij c_ij^k` where `T_k` is the book with
/// spine edge `ij` and `k` triangular pages and `c_ij` is the codegree.
pub fn book_hom_closed<T: Scalar>(k: u32, w: &StepGraphon<T>) -> T {
    let m = w.block_count();
    let mut acc = T::Accum::default();
    for i in 0..m {
        for j in 0..m {
            let c = codegree(w, i, j);
            acc.push(w.weight(i).clone() * w.weight(j).clone() * w.value(i, j).clone() * c.powu(k));
        }
    }
    acc.total()
}

/// `m(T_k, W)`: the book closed form summed over both colors.
pub fn book_mono_closed<T: Scalar>(k: u32, w: &StepGraphon<T>) -> T {
    let comp = w.complement();
    book_hom_closed(k, w) + book_hom_closed(k, &comp)
}

/// The triangle identity `m(T_1, W) = (3/2) m(S_2, W) - 1/2`, evaluated on
/// the right-hand side. Agreement with [`book_mono_closed`] at `k = 1` is a
/// strong end-to-end check of both closed forms.
pub fn goodman_triangle<T: Scalar>(w: &StepGraphon<T>) -> T {
    let three_halves = T::from_int(3) / T::from_int(2);
    three_halves * star_mono_closed(2, w) - T::half()
}

/// The four densities of the `w_epsilon` family in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct WepsDensities<T: Scalar> {
    pub t_tk_w: T,
    pub t_tk_comp: T,
    pub t_sk_w: T,
    pub t_sk_comp: T,
}

impl<T: Scalar> WepsDensities<T> {
    pub fn mono_tk(&self) -> T {
        self.t_tk_w.clone() + self.t_tk_comp.clone()
    }

    pub fn mono_sk(&self) -> T {
        self.t_sk_w.clone() + self.t_sk_comp.clone()
    }
}

/// Closed forms for `t(T_k, .)` and `t(S_k, .)` on `w_epsilon` and its
/// complement, polynomial in `eps`:
///
/// ```text
/// t(T_k, W)     = 2e(1-e)((1-e)/3)^k + 3((1-e)/3)^2 ((1+2e)/3)^k
/// t(T_k, 1-W)   = e^(k+2) + 6((1-e)/3)^(k+2)
/// t(S_k, W)     = e(1-e)^k + (1-e)((1+2e)/3)^k
/// t(S_k, 1-W)   = e^(k+1) + (1-e)((2-2e)/3)^k
/// ```
pub fn closed_form_weps<T: Scalar>(k: u32, eps: &T) -> Result<WepsDensities<T>> {
    if *eps < T::zero() || *eps >= T::one() {
        return Err(Error::EpsOutOfRange {
            eps: eps.to_string(),
        });
    }
    let e = eps.clone();
    let one = T::one();
    let two = T::from_int(2);
    let three = T::from_int(3);
    let six = T::from_int(6);
    let third = (one.clone() - e.clone()) / three.clone();
    let mid = (one.clone() + two.clone() * e.clone()) / three.clone();
    let comp_mid = (two.clone() - two.clone() * e.clone()) / three.clone();

    let t_tk_w = two.clone() * e.clone() * (one.clone() - e.clone()) * third.powu(k)
        + three * third.powu(2) * mid.powu(k);
    let t_tk_comp = e.powu(k + 2) + six * third.powu(k + 2);
    let t_sk_w = e.clone() * (one.clone() - e.clone()).powu(k)
        + (one.clone() - e.clone()) * mid.powu(k);
    let t_sk_comp = e.powu(k + 1) + (one - e) * comp_mid.powu(k);
    Ok(WepsDensities {
        t_tk_w,
        t_tk_comp,
        t_sk_w,
        t_sk_comp,
    })
}

/// Monte Carlo estimate of `t(G, W)` for the float backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

pub fn mc_estimate(g: &Graph, w: &StepGraphon<f64>, samples: u64, seed: u64) -> McEstimate {
    assert!(samples > 0, "need at least one sample");
    let m = w.block_count();
    let mut cumulative = Vec::with_capacity(m);
    let mut running = 0.0;
    for i in 0..m {
        running += w.weight(i);
        cumulative.push(running);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = g.vertex_count();
    let mut blocks = vec![0usize; v];
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        for slot in blocks.iter_mut() {
            let u: f64 = rng.gen();
            *slot = cumulative.partition_point(|&c| c < u).min(m - 1);
        }
        let mut x = 1.0;
        for &(a, b) in g.edges() {
            x *= w.value(blocks[a], blocks[b]);
        }
        sum += x;
        sum_sq += x * x;
    }
    let n = samples as f64;
    let mean = sum / n;
    let variance = (sum_sq / n - mean * mean).max(0.0);
    let std_error = if samples > 1 {
        (variance / (n - 1.0)).sqrt()
    } else {
        f64::INFINITY
    };
    McEstimate {
        mean,
        std_error,
        samples,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_traits::Zero;

    fn two_block_rat() -> StepGraphon<Rat> {
        StepGraphon::new(
            vec![Rat::from_ratio(1, 3), Rat::from_ratio(2, 3)],
            vec![
                vec![Rat::from_int(1), Rat::from_ratio(1, 2)],
                vec![Rat::from_ratio(1, 2), Rat::zero()],
            ],
        )
        .unwrap()
    }

    fn three_block_rat() -> StepGraphon<Rat> {
        let q = |n, d| Rat::from_ratio(n, d);
        StepGraphon::new(
            vec![q(1, 4), q(1, 4), q(1, 2)],
            vec![
                vec![q(0, 1), q(1, 1), q(1, 3)],
                vec![q(1, 1), q(1, 2), q(1, 4)],
                vec![q(1, 3), q(1, 4), q(1, 1)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn brute_matches_hand_computed_values() {
        let w = two_block_rat();
        let cases: Vec<(Graph, Rat, Rat)> = vec![
            (Graph::star(3), Rat::from_ratio(11, 108), Rat::from_ratio(43, 108)),
            (Graph::book(2), Rat::from_ratio(11, 324), Rat::from_ratio(89, 324)),
            (Graph::path(4).unwrap(), Rat::from_ratio(2, 27), Rat::from_ratio(10, 27)),
            (Graph::book(1), Rat::from_ratio(5, 54), Rat::from_ratio(11, 27)),
            (Graph::star(2), Rat::from_ratio(1, 6), Rat::from_ratio(1, 2)),
        ];
        for (g, t_w, t_c) in cases {
            let report = mono_density(&g, &w, Method::Brute, DEFAULT_TERM_BUDGET).unwrap();
            assert_eq!(report.t_w, t_w, "{g:?}");
            assert_eq!(report.t_comp, t_c, "{g:?}");
            assert_eq!(report.mono, t_w + t_c);
            assert_eq!(report.backend, Backend::Exact);
        }
    }

    #[test]
    fn forest_pass_matches_hand_computed_tree() {
        let g = Graph::new(5, vec![(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let t = hom_density_forest(&g, &three_block_rat()).unwrap();
        assert_eq!(t, Rat::from_ratio(983, 9216));
    }

    #[test]
    fn constant_graphon_gives_p_to_the_edges() {
        let w = StepGraphon::constant(0.3).unwrap();
        let t = hom_density_brute(&Graph::book(1), &w, DEFAULT_TERM_BUDGET).unwrap();
        assert!((t - 0.027).abs() < 1e-15);
        let t = hom_density_forest(&Graph::star(4), &w).unwrap();
        assert!((t - 0.3f64.powi(4)).abs() < 1e-15);
    }

    #[test]
    fn forest_agrees_with_brute_on_random_forests() {
        for seed in 0..15u64 {
            let tree = Graph::random_tree(6, seed).unwrap();
            let w = StepGraphon::random_rational(3, 12, seed).unwrap();
            let a = hom_density_brute(&tree, &w, DEFAULT_TERM_BUDGET).unwrap();
            let b = hom_density_forest(&tree, &w).unwrap();
            assert_eq!(a, b, "seed {seed}");
        }
        // disconnected forest
        let forest = Graph::new(5, vec![(0, 1), (2, 3)]).unwrap();
        let w = StepGraphon::random_rational(3, 10, 99).unwrap();
        assert_eq!(
            hom_density_brute(&forest, &w, DEFAULT_TERM_BUDGET).unwrap(),
            hom_density_forest(&forest, &w).unwrap()
        );
    }

    #[test]
    fn forest_rejects_cycles() {
        let err = hom_density_forest(&Graph::book(1), &two_block_rat()).unwrap_err();
        assert!(matches!(err, Error::NotAForest));
    }

    #[test]
    fn closed_forms_agree_with_brute() {
        for seed in 0..8u64 {
            let w = StepGraphon::random_rational(3, 9, seed).unwrap();
            for k in 0..=4u32 {
                let star = Graph::star(k as usize);
                let brute = hom_density_brute(&star, &w, DEFAULT_TERM_BUDGET).unwrap();
                assert_eq!(star_hom_closed(k, &w), brute, "star k={k} seed={seed}");
                let book = Graph::book(k as usize);
                let brute = hom_density_brute(&book, &w, DEFAULT_TERM_BUDGET).unwrap();
                assert_eq!(book_hom_closed(k, &w), brute, "book k={k} seed={seed}");
            }
        }
    }

    #[test]
    fn degree_profile_values() {
        let p = degree_profile(&two_block_rat());
        assert_eq!(p.degrees, vec![Rat::from_ratio(2, 3), Rat::from_ratio(1, 6)]);
        assert_eq!(p.offsets, vec![Rat::from_ratio(1, 6), Rat::from_ratio(-1, 3)]);
    }

    #[test]
    fn goodman_identity_holds_exactly() {
        for seed in 0..10u64 {
            let w = StepGraphon::random_rational(4, 7, seed).unwrap();
            assert_eq!(book_mono_closed(1, &w), goodman_triangle(&w), "seed {seed}");
        }
        let wf = StepGraphon::random(4, 3).unwrap();
        let gap = book_mono_closed(1, &wf) - goodman_triangle(&wf);
        assert!(gap.abs() < 1e-12, "gap {gap}");
    }

    #[test]
    fn weps_closed_forms_match_generic_engines() {
        let eps = Rat::from_ratio(1, 20);
        let w = StepGraphon::w_epsilon(eps.clone()).unwrap();
        let comp = w.complement();
        for k in 0..=6u32 {
            let cf = closed_form_weps(k, &eps).unwrap();
            assert_eq!(cf.t_sk_w, star_hom_closed(k, &w), "k={k}");
            assert_eq!(cf.t_sk_comp, star_hom_closed(k, &comp), "k={k}");
            assert_eq!(cf.t_tk_w, book_hom_closed(k, &w), "k={k}");
            assert_eq!(cf.t_tk_comp, book_hom_closed(k, &comp), "k={k}");
        }
        // independent route for small k: raw enumeration
        for k in 0..=3u32 {
            let cf = closed_form_weps(k, &eps).unwrap();
            let book = Graph::book(k as usize);
            assert_eq!(
                cf.t_tk_w,
                hom_density_brute(&book, &w, DEFAULT_TERM_BUDGET).unwrap()
            );
        }
        // the eps = 0 graphon drops a block yet the formulas still apply
        let w0 = StepGraphon::<Rat>::w_epsilon(Rat::zero()).unwrap();
        let cf = closed_form_weps(5, &Rat::zero()).unwrap();
        assert_eq!(cf.t_sk_w, star_hom_closed(5, &w0));
        assert_eq!(cf.t_tk_comp, book_hom_closed(5, &w0.complement()));
    }

    #[test]
    fn weps_values_at_k_twelve() {
        let eps = Rat::from_ratio(1, 20);
        let cf = closed_form_weps(12, &eps).unwrap();
        let parse = |s: &str| <Rat as Scalar>::parse(s).unwrap();
        assert_eq!(cf.t_tk_w, parse("489297385058230933/261213880320000000000000"));
        assert_eq!(cf.t_tk_comp, parse("319602674313472513/522427760640000000000000"));
        assert_eq!(cf.t_sk_w, parse("235298107790685920621/8707129344000000000000"));
        assert_eq!(cf.t_sk_comp, parse("34449804052281089021/8707129344000000000000"));
        assert_eq!(cf.mono_tk(), parse("144244160492214931/58047528960000000000000"));
        assert_eq!(cf.mono_sk(), parse("134873955921483504821/4353564672000000000000"));

        let cf64 = closed_form_weps(12, &0.05f64).unwrap();
        assert!((cf64.mono_tk() - 2.48493197000017349e-06).abs() < 1e-18);
        assert!((cf64.mono_sk() - 3.09801199897010507e-02).abs() < 1e-14);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::star(3);
        let w = StepGraphon::new(
            vec![0.5, 0.5],
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        )
        .unwrap();
        let err = hom_density_brute(&g, &w, 10).unwrap_err();
        match err {
            Error::BudgetExceeded { required, allowed } => {
                assert_eq!(required, 16);
                assert_eq!(allowed, 10);
            }
            other => panic!("unexpected error {other}"),
        }
        assert!(hom_density_brute(&g, &w, 16).is_ok());
    }

    #[test]
    fn brute_is_thread_count_invariant() {
        let g = Graph::new(6, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let w = StepGraphon::random(5, 42).unwrap();
        let run = |threads: usize| -> f64 {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| hom_density_brute(&g, &w, DEFAULT_TERM_BUDGET).unwrap())
        };
        let single = run(1);
        let multi = run(8);
        assert_eq!(single.to_bits(), multi.to_bits());
    }

    #[test]
    fn method_dispatch_and_parsing() {
        let w = two_block_rat();
        let star = Graph::star(3);
        assert_eq!(
            hom_density(&star, &w, Method::Auto, DEFAULT_TERM_BUDGET).unwrap(),
            Rat::from_ratio(11, 108)
        );
        let cycle = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(
            hom_density(&cycle, &w, Method::Closed, DEFAULT_TERM_BUDGET),
            Err(Error::NotClosedForm)
        ));
        // C_4 is neither star, book, nor forest; Auto falls through to brute
        let auto = hom_density(&cycle, &w, Method::Auto, DEFAULT_TERM_BUDGET).unwrap();
        let brute = hom_density(&cycle, &w, Method::Brute, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(auto, brute);
        assert_eq!("forest".parse::<Method>().unwrap(), Method::Forest);
        assert!("other".parse::<Method>().is_err());
    }

    #[test]
    fn eps_domain_is_checked() {
        assert!(closed_form_weps(3, &1.0f64).is_err());
        assert!(closed_form_weps(3, &-0.01f64).is_err());
        assert!(closed_form_weps(3, &0.0f64).is_ok());
    }

    #[test]
    fn mc_estimate_is_consistent() {
        let w = StepGraphon::constant(0.5).unwrap();
        let est = mc_estimate(&Graph::book(1), &w, 20_000, 7);
        assert!((est.mean - 0.125).abs() < 5.0 * est.std_error.max(1e-9));
        let sure = mc_estimate(&Graph::star(2), &StepGraphon::constant(1.0).unwrap(), 100, 1);
        assert_eq!(sure.mean, 1.0);
        assert_eq!(sure.std_error, 0.0);
        // determinism
        let a = mc_estimate(&Graph::star(3), &StepGraphon::random(3, 5).unwrap(), 1000, 11);
        let b = mc_estimate(&Graph::star(3), &StepGraphon::random(3, 5).unwrap(), 1000, 11);
        assert_eq!(a, b);
    }
}
