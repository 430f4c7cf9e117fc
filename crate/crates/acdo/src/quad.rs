//! Gauss–Legendre quadrature on radial profiles.
//!
//! Radial integrands here look like ρ^{2p+1}·e^{−αρ²}·(polynomial), possibly
//! with p ∈ (−1, 0): integrable but with unbounded derivatives at ρ = 0. A
//! single panel would lose most digits near the origin, so the composite rule
//! uses geometrically shrinking panels toward 0 — standard treatment for
//! endpoint algebraic singularities — plus one closing panel [0, ρ_cut·2^{−J}]
//! whose contribution is below target accuracy by construction of J.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub(crate) struct GlRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GlRule {
    /// Newton iteration on P_n with the classical Chebyshev-like initial
    /// guess x₀ = cos(π(k+3/4)/(n+1/2)); converges to machine precision in a
    /// handful of steps for all practical n.
    fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre rule needs at least two nodes");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for k in 0..n {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Evaluate P_n(x) and P_n'(x) by the three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[k] = x;
            weights[k] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GlRule { nodes, weights }
    }

    /// ∫_a^b f(x) dx by this rule on one panel.
    fn integrate(&self, f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            sum += w * f(mid + half * x);
        }
        half * sum
    }
}

static RULE_CACHE: LazyLock<Mutex<HashMap<usize, Arc<GlRule>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Shared, lazily built rule of the given order.
pub(crate) fn gl_rule(n: usize) -> Arc<GlRule> {
    let mut cache = RULE_CACHE.lock().unwrap();
    cache.entry(n).or_insert_with(|| Arc::new(GlRule::new(n))).clone()
}

/// ∫_0^{rho_cut} f(ρ) dρ with `halvings` geometric panels toward the origin.
///
/// Panels are [ρ_cut·2^{−(j+1)}, ρ_cut·2^{−j}] for j = 0..halvings, then one
/// final panel [0, ρ_cut·2^{−halvings}] closing the gap. Each panel gets the
/// same n-node rule, so the cost is (halvings + 1) · nodes evaluations.
pub(crate) fn composite_radial(
    f: &dyn Fn(f64) -> f64,
    rho_cut: f64,
    halvings: usize,
    nodes: usize,
) -> f64 {
    let rule = gl_rule(nodes);
    let mut total = 0.0;
    let mut hi = rho_cut;
    for _ in 0..halvings {
        let lo = 0.5 * hi;
        total += rule.integrate(f, lo, hi);
        hi = lo;
    }
    total + rule.integrate(f, 0.0, hi)
}
