use serde::Serialize;

use super::core::{core_variant, CoreGraph};
use super::{log2, prev_pow2};
use crate::error::{domain, Result};
use crate::graph::Graph;
use crate::ratio::Ratio;
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Ncopy,
    Scopy,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneralizedCert {
    pub delta_star: usize,
    pub beta_star: f64,
    /// 2e/Δ* ≤ β* ≤ Δ*/(2e)
    pub range_ok: bool,
    pub branch: Branch,
    /// integer solution of the branch equation, before power-of-two rounding
    pub s_solved: usize,
    /// set when even s = 1 overshoots Δ*; the builder proceeds with s = 1
    pub flagged: bool,
    pub s: usize,
    pub k: usize,
    pub s_star: usize,
    pub n_star: usize,
    pub max_degree: usize,
    /// (4 / log min{Δ*/β*, Δ*·β*})·|N*|, absent when the log is not positive
    pub log_cap: Option<f64>,
    /// unique-cover cap of the underlying core variant
    pub structural_cap: usize,
}

#[derive(Clone, Debug)]
pub struct GeneralizedCore {
    pub core: CoreGraph,
    pub cert: GeneralizedCert,
}

/// Errors when β* lies outside `[2e/Δ*, Δ*/(2e)]`.
pub fn build_generalized_core(delta_star: usize, beta_star: f64) -> Result<GeneralizedCore> {
    let built = build_generalized_core_relaxed(delta_star, beta_star)?;
    if !built.cert.range_ok {
        return domain(format!(
            "β* = {beta_star} outside [2e/Δ*, Δ*/(2e)] for Δ* = {delta_star}"
        ));
    }
    Ok(built)
}

/// Same construction without the range precondition, which is empty for
/// Δ* < 2e; the certificate records whether it held. Max degree stays ≤ Δ*.
pub fn build_generalized_core_relaxed(delta_star: usize, beta_star: f64) -> Result<GeneralizedCore> {
    if delta_star == 0 || !(beta_star > 0.0) || !beta_star.is_finite() {
        return domain("need Δ* ≥ 1 and β* > 0");
    }
    let e2 = 2.0 * std::f64::consts::E;
    let ds = delta_star as f64;
    let range_ok = e2 / ds <= beta_star && beta_star <= ds / e2;

    let ncopy_deg = |s: usize| 2.0 * s as f64 * beta_star / log2(2 * s);
    let scopy_deg = |s: usize| 2.0 * s as f64 * log2(2 * s) / beta_star;

    let (sn, flag_n) = largest_within(delta_star, ncopy_deg);
    let (branch, s_solved, flagged) = if beta_star >= log2(2 * sn) {
        (Branch::Ncopy, sn, flag_n)
    } else {
        let (ss, flag_s) = largest_within(delta_star, scopy_deg);
        (Branch::Scopy, ss, flag_s)
    };

    let s = prev_pow2(s_solved);
    let lg = log2(2 * s);
    let half = (delta_star / 2).max(1);
    let (core, k) = match branch {
        Branch::Ncopy => {
            let mut k = ((beta_star / lg).round() as usize).max(1);
            while k > 1 && (2 * s - 1) * k > delta_star {
                k -= 1;
            }
            (core_variant(s, k, 1, Some(beta_star / lg)), k)
        }
        Branch::Scopy => {
            let mut k = ((lg / beta_star).round() as usize).max(1);
            while k > 1 && ((2 * s - 1).max(s * k) > delta_star || s * k > half) {
                k -= 1;
            }
            (core_variant(s, 1, k, Some(lg / beta_star)), k)
        }
    };

    let n_star = core.spec.n_side();
    let m = (ds / beta_star).min(ds * beta_star);
    let log_cap = (m > 1.0).then(|| 4.0 / m.log2() * n_star as f64);
    let cert = GeneralizedCert {
        delta_star,
        beta_star,
        range_ok,
        branch,
        s_solved,
        flagged,
        s,
        k,
        s_star: core.spec.s_side(),
        n_star,
        max_degree: core.graph.max_degree(),
        log_cap,
        structural_cap: core.spec.certificate().wireless_cap,
    };
    Ok(GeneralizedCore { core, cert })
}

/// Largest integer `s ∈ [1, hi]` with `f(s) ≤ hi`, by bisection on the
/// non-decreasing map `f`; `(1, true)` when not even `s = 1` fits.
fn largest_within(hi: usize, f: impl Fn(usize) -> f64) -> (usize, bool) {
    let limit = hi as f64 + 1e-9;
    if f(1) > limit {
        return (1, true);
    }
    let (mut lo, mut up) = (1usize, hi);
    while lo < up {
        let mid = lo + (up - lo).div_ceil(2);
        if f(mid) <= limit {
            lo = mid;
        } else {
            up = mid - 1;
        }
    }
    (lo, false)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PlugParams {
    pub epsilon: Ratio,
    pub delta_star: usize,
    pub beta_star: f64,
}

impl PlugParams {
    /// Δ* = ⌊ε·Δ⌋ (at least 1) and β* = β/ε.
    pub fn derive(epsilon: Ratio, max_degree: usize, beta: Ratio) -> Result<Self> {
        if epsilon.num == 0 || epsilon >= Ratio::new(1, 2) {
            return domain(format!("ε = {epsilon} must lie in (0, 1/2)"));
        }
        let delta_star = epsilon.floor_mul(max_degree).max(1);
        Ok(PlugParams { epsilon, delta_star, beta_star: beta.to_f64() / epsilon.to_f64() })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlugCert {
    pub epsilon: Ratio,
    pub base_n: usize,
    pub base_max_degree: usize,
    pub alpha: Ratio,
    pub beta: Ratio,
    pub n_tilde: usize,
    pub n_tilde_bound: f64,
    pub max_degree_tilde: usize,
    pub max_degree_bound: f64,
    pub alpha_tilde: Ratio,
    pub beta_tilde: Ratio,
    pub s_star: VertexSet,
    pub n_star: VertexSet,
    pub core: GeneralizedCert,
}

#[derive(Clone, Debug)]
pub struct Plugged {
    pub graph: Graph,
    pub cert: PlugCert,
}

/// Adds the left side of a generalized core as new vertices and wires it
/// to the lowest-id base vertices.
pub fn plug_worst_case(base: &Graph, alpha: Ratio, beta: Ratio, params: &PlugParams) -> Result<Plugged> {
    let eps = params.epsilon;
    if eps.num == 0 || eps >= Ratio::new(1, 2) {
        return domain(format!("ε = {eps} must lie in (0, 1/2)"));
    }
    let delta = base.max_degree();
    let e = eps.to_f64();
    if (delta as f64) * beta.to_f64() < 1.0 / (1.0 - e * e) {
        return domain("need Δ·β ≥ 1/(1−ε²)");
    }
    let gen = build_generalized_core_relaxed(params.delta_star, params.beta_star)?;
    let core = &gen.core;
    let (s_star, n_star) = (core.spec.s_side(), core.spec.n_side());
    let n = base.n();
    if n_star > n {
        return domain(format!("core needs {n_star} base vertices, base has {n}"));
    }
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    // core vertex ids: left 0..s_star, right s_star..; right p maps to base vertex p
    edges.extend(core.graph.edges().map(|(a, b)| (b - s_star, n + a)));
    let graph = Graph::from_edges(n + s_star, edges)?;
    let one_minus = Ratio::new(eps.den - eps.num, eps.den);
    let cert = PlugCert {
        epsilon: eps,
        base_n: n,
        base_max_degree: delta,
        alpha,
        beta,
        n_tilde: graph.n(),
        n_tilde_bound: (1.0 + e) * n as f64,
        max_degree_tilde: graph.max_degree(),
        max_degree_bound: (1.0 + e) * delta as f64,
        alpha_tilde: mul(one_minus, alpha),
        beta_tilde: mul(one_minus, beta),
        s_star: VertexSet::range(graph.n(), n..n + s_star),
        n_star: VertexSet::range(graph.n(), 0..n_star),
        core: gen.cert,
    };
    Ok(Plugged { graph, cert })
}

fn mul(a: Ratio, b: Ratio) -> Ratio {
    Ratio::new(a.num * b.num, a.den * b.den)
}
