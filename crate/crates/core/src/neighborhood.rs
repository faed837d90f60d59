//! The distribution over colored k-point configurations and the two
//! statistics that drive every bound in this crate: the common degree `d`
//! (measure of the joint neighborhood of k points in one color) and the
//! edge density `delta` inside that joint neighborhood. For a step graphon
//! both depend only on the multiset of blocks the points land in, so the
//! whole distribution collapses to `2 * C(m+k-1, k)` weighted profiles.

use crate::density::{book_mono_closed, star_mono_closed, DEFAULT_TERM_BUDGET};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graphon::StepGraphon;
use crate::scalar::{multinomial, Accumulator, Scalar};
use itertools::Itertools;

/// Which of the two color classes a profile lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorClass {
    Graphon,
    Complement,
}

/// A block multiset in one color: `counts[b]` points land in block `b`,
/// `sum(counts) = k`, and `mass` is the probability of seeing this profile,
/// `multinomial(counts) * prod_b a_b^counts[b]`. Masses in one color sum to
/// one, so the full two-color measure has total mass two.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockProfile<T: Scalar> {
    pub color: ColorClass,
    pub counts: Vec<u32>,
    pub mass: T,
}

/// All `2 * C(m+k-1, k)` profiles, graphon color first, multisets in
/// lexicographic order. The profile count is checked against `budget`.
pub fn profiles<T: Scalar>(
    w: &StepGraphon<T>,
    k: u32,
    budget: u128,
) -> Result<Vec<BlockProfile<T>>> {
    let m = w.block_count();
    let required = 2 * multiset_count(m, k);
    if required > budget {
        return Err(Error::BudgetExceeded {
            required,
            allowed: budget,
        });
    }
    let mut out = Vec::with_capacity(required as usize);
    for color in [ColorClass::Graphon, ColorClass::Complement] {
        for counts in multisets(m, k) {
            let mut mass = T::from_biguint(&multinomial(&counts));
            for (b, &c) in counts.iter().enumerate() {
                mass = mass * w.weight(b).powu(c);
            }
            out.push(BlockProfile { color, counts, mass });
        }
    }
    Ok(out)
}

/// `C(m+k-1, k)` as a u128, saturating.
fn multiset_count(m: usize, k: u32) -> u128 {
    let mut c: u128 = 1;
    for i in 1..=k as u128 {
        c = match c.checked_mul(m as u128 - 1 + i) {
            Some(x) => x / i,
            None => return u128::MAX / 2,
        };
    }
    c
}

/// Multisets of size `k` over `m` blocks as count vectors, lexicographic in
/// the underlying nondecreasing block sequence.
fn multisets(m: usize, k: u32) -> impl Iterator<Item = Vec<u32>> {
    (0..m)
        .combinations_with_replacement(k as usize)
        .map(move |choice| {
            let mut counts = vec![0u32; m];
            for b in choice {
                counts[b] += 1;
            }
            counts
        })
}

/// Common degree of a profile: the measure of points adjacent, within the
/// given value matrix, to all `k` profile points.
fn degree_of<T: Scalar>(weights: &[T], values: &[Vec<T>], counts: &[u32]) -> T {
    let m = weights.len();
    let mut acc = T::Accum::default();
    for j in 0..m {
        let mut term = weights[j].clone();
        for (b, &c) in counts.iter().enumerate() {
            if c > 0 {
                term = term * values[j][b].powu(c);
            }
        }
        acc.push(term);
    }
    acc.total()
}

/// Numerator of the common-neighborhood edge density: the measure of pairs
/// `(y, z)` that are both adjacent to the whole profile and to each other.
fn pair_numerator_of<T: Scalar>(weights: &[T], values: &[Vec<T>], counts: &[u32]) -> T {
    let m = weights.len();
    let mut acc = T::Accum::default();
    for j in 0..m {
        let mut reach_j = weights[j].clone();
        for (b, &c) in counts.iter().enumerate() {
            if c > 0 {
                reach_j = reach_j * values[j][b].powu(c);
            }
        }
        for l in 0..m {
            let mut reach_l = weights[l].clone();
            for (b, &c) in counts.iter().enumerate() {
                if c > 0 {
                    reach_l = reach_l * values[l][b].powu(c);
                }
            }
            acc.push(reach_j.clone() * reach_l * values[j][l].clone());
        }
    }
    acc.total()
}

fn color_values<T: Scalar>(w: &StepGraphon<T>, color: ColorClass) -> Vec<Vec<T>> {
    match color {
        ColorClass::Graphon => w.values().to_vec(),
        ColorClass::Complement => w.complement().values().to_vec(),
    }
}

/// Common degree `d` of a profile.
pub fn common_degree<T: Scalar>(w: &StepGraphon<T>, color: ColorClass, counts: &[u32]) -> T {
    degree_of(w.weights(), &color_values(w, color), counts)
}

/// Common degree `d` and common-neighborhood edge density `delta` of a
/// profile. `delta` is the pair numerator divided by `d^2`, and zero by
/// convention when the neighborhood is empty.
pub fn common_edge_density<T: Scalar>(
    w: &StepGraphon<T>,
    color: ColorClass,
    counts: &[u32],
) -> (T, T) {
    let values = color_values(w, color);
    let d = degree_of(w.weights(), &values, counts);
    if d == T::zero() {
        return (d, T::zero());
    }
    let num = pair_numerator_of(w.weights(), &values, counts);
    let delta = num / (d.clone() * d.clone());
    (d, delta)
}

/// `integral of d^p * delta^q` over all profiles of both colors. Requires
/// `p >= 1` whenever `q >= 1` so the `d = 0` convention never multiplies an
/// empty neighborhood back in.
pub fn dk_integral<T: Scalar>(
    w: &StepGraphon<T>,
    k: u32,
    p: u32,
    q: u32,
    budget: u128,
) -> Result<T> {
    assert!(q == 0 || p >= 1, "d^{p} delta^{q} is not defined at d = 0");
    let weights = w.weights();
    let mut acc = T::Accum::default();
    for color in [ColorClass::Graphon, ColorClass::Complement] {
        let values = color_values(w, color);
        let required = 2 * multiset_count(w.block_count(), k);
        if required > budget {
            return Err(Error::BudgetExceeded {
                required,
                allowed: budget,
            });
        }
        for counts in multisets(w.block_count(), k) {
            let mut mass = T::from_biguint(&multinomial(&counts));
            for (b, &c) in counts.iter().enumerate() {
                mass = mass * weights[b].powu(c);
            }
            let d = degree_of(weights, &values, counts.as_slice());
            if d == T::zero() {
                if p >= 1 {
                    continue;
                }
                acc.push(mass);
                continue;
            }
            let mut term = mass * d.powu(p);
            if q > 0 {
                let num = pair_numerator_of(weights, &values, counts.as_slice());
                let delta = num / (d.clone() * d.clone());
                term = term * delta.powu(q);
            }
            acc.push(term);
        }
    }
    Ok(acc.total())
}

/// The lower bound the ratio argument gives for apex trees:
/// `m(T_k)^(n-1) / m(S_k)^(n-2)`, from the closed forms.
pub fn ratio_chain_lower<T: Scalar>(n: u32, k: u32, w: &StepGraphon<T>) -> T {
    assert!(n >= 2, "a tree has at least two vertices here");
    let m_tk = book_mono_closed(k, w);
    let m_sk = star_mono_closed(k, w);
    m_tk.powu(n - 1) / m_sk.powu(n - 2)
}

/// Everything the two-step bound produces for one tree, one k, and one
/// graphon: the ratio lower bound, the configuration integral between them,
/// the monochromatic apex density above, and the commonality target
/// `2^(2 - (k+1)n)` for the apex graph.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeChainReport<T: Scalar> {
    pub n: u32,
    pub k: u32,
    pub lower: T,
    pub integral: T,
    pub apex_mono: T,
    pub target: T,
}

impl<T: Scalar> TreeChainReport<T> {
    /// Both proved inequalities, checked exactly in the exact backend and
    /// with a `1e-12` cushion in floats.
    pub fn chain_holds(&self) -> bool {
        let slack = if T::EXACT {
            T::zero()
        } else {
            T::from_ratio(1, 1_000_000_000_000)
        };
        self.lower <= self.integral.clone() + slack.clone()
            && self.integral <= self.apex_mono.clone() + slack
    }

    pub fn meets_target(&self) -> bool {
        self.apex_mono >= self.target
    }
}

/// Evaluate the chain `m(T_k)^(n-1)/m(S_k)^(n-2) <= integral of
/// d^n delta^(n-1) <= m(tree^{+k})` for a given tree.
pub fn tree_apex_chain<T: Scalar>(
    tree: &Graph,
    k: u32,
    w: &StepGraphon<T>,
    budget: u128,
) -> Result<TreeChainReport<T>> {
    if !tree.is_tree() {
        return Err(Error::NotAForest);
    }
    let n = tree.vertex_count() as u32;
    let lower = ratio_chain_lower(n, k, w);
    let integral = dk_integral(w, k, n, n - 1, budget)?;
    let apex = tree.apex(k as usize);
    let apex_mono =
        crate::density::mono_density(&apex, w, crate::density::Method::Brute, budget)?.mono;
    let exponent = 2i64 - (k as i64 + 1) * n as i64;
    let target = T::pow2(exponent as i32);
    Ok(TreeChainReport {
        n,
        k,
        lower,
        integral,
        apex_mono,
        target,
    })
}

/// Hölder's inequality instance behind [`ratio_chain_lower`], checked in
/// floats: `integral(d^2 delta)` against
/// `integral(d^n delta^(n-1))^(1/(n-1)) * integral(d)^((n-2)/(n-1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

pub fn holder_check(w: &StepGraphon<f64>, k: u32, n: u32) -> Result<HolderCheck> {
    assert!(n >= 2);
    let lhs = dk_integral(w, k, 2, 1, DEFAULT_TERM_BUDGET)?;
    let high = dk_integral(w, k, n, n - 1, DEFAULT_TERM_BUDGET)?;
    let low = dk_integral(w, k, 1, 0, DEFAULT_TERM_BUDGET)?;
    let nm1 = (n - 1) as f64;
    let rhs = high.powf(1.0 / nm1) * low.powf((n - 2) as f64 / nm1);
    Ok(HolderCheck {
        lhs,
        rhs,
        ok: lhs <= rhs + 1e-12,
    })
}
