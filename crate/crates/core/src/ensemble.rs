//! Parity census of the ensemble (the Latin squares on every three columns)
//! and the bounds and congruences it must obey.

use crate::error::{Error, Result};
use crate::oa::OrthogonalArray;
use crate::order::{binomial, pairs, triples, Order};
use crate::parity::{
    check_plausible, sigma_from_tau, sigma_parity, tau_parity, ParityTriple, PpStatus, SigmaMatrix, TauVector,
};

/// Parity types of the `C(k,3)` ensemble squares with the derived counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnsembleCensus {
    pub k: usize,
    pub order: Order,
    /// Type of the square on columns `c1 < c2 < c3`, in lexicographic triple
    /// order: `(τ^{c1}_{c2c3}, τ^{c2}_{c1c3}, τ^{c3}_{c1c2})`.
    pub triple_types: Vec<ParityTriple>,
    /// Counts indexed by [`ParityTriple::index`].
    pub type_counts: [usize; 8],
    /// Number of equiparity squares: type 000 when `C(n,2)` is even, 111
    /// otherwise.
    pub x: usize,
    /// Total number of edges over all τ-graphs.
    pub total_edges: usize,
    /// Row sums of the σ-matrix.
    pub mu: Vec<usize>,
    pub pp_plausible: PpStatus,
}

impl EnsembleCensus {
    /// Counts `(z, y1, y2, y3)` among the squares on columns `{0, 1, c}`:
    /// types `000, 011, 101, 110` when `C(n,2)` is even, `111, 100, 010, 001`
    /// otherwise.
    pub fn complete_set_type_counts(&self) -> [usize; 4] {
        let order: [usize; 4] =
            if self.order.binom2_parity() == 1 { [0b111, 0b100, 0b010, 0b001] } else { [0b000, 0b011, 0b101, 0b110] };
        let mut out = [0; 4];
        for (idx, (a, b, _)) in triples(self.k).enumerate() {
            if (a, b) == (0, 1) {
                let ty = self.triple_types[idx].index();
                let slot = order.iter().position(|&o| o == ty).expect("plausible type");
                out[slot] += 1;
            }
        }
        out
    }

    fn is_equiparity(&self, t: &ParityTriple) -> bool {
        let want = self.order.binom2_parity();
        t.pr == want && t.pc == want && t.ps == want
    }
}

fn build(t: &TauVector, sigma: &SigmaMatrix) -> Result<EnsembleCensus> {
    let k = t.k();
    let report = check_plausible(t);
    if !report.plausible {
        return Err(Error::NotPlausible(report.violations[0].to_string()));
    }
    let b = t.order().binom2_parity();
    let triple_types: Vec<ParityTriple> = triples(k)
        .map(|(c1, c2, c3)| ParityTriple { pr: t.get(c1, c2, c3), pc: t.get(c2, c1, c3), ps: t.get(c3, c1, c2) })
        .collect();
    let mut type_counts = [0; 8];
    for ty in &triple_types {
        type_counts[ty.index()] += 1;
    }
    let x = type_counts[if b == 1 { 0b111 } else { 0 }];
    let total_edges: usize =
        (0..k).map(|c| pairs(k).filter(|&(i, j)| i != c && j != c && t.get(c, i, j) == 1).count()).sum();
    let mu = sigma.out_degrees();

    let triples_total = binomial(k, 3);
    let from_x = if b == 1 { 2 * x + triples_total } else { 2 * triples_total - 2 * x };
    let from_mu: usize = mu.iter().map(|&m| m * (k - 1 - m)).sum();
    if from_x != total_edges || from_mu != total_edges {
        return Err(Error::Structure(format!(
            "edge count {total_edges} disagrees with equiparity count ({from_x}) or row sums ({from_mu})"
        )));
    }
    Ok(EnsembleCensus {
        k,
        order: t.order(),
        triple_types,
        type_counts,
        x,
        total_edges,
        mu,
        pp_plausible: report.pp_plausible,
    })
}

pub fn ensemble_census(a: &OrthogonalArray) -> Result<EnsembleCensus> {
    build(&tau_parity(a), &sigma_parity(a))
}

/// Census of a plausible τ-parity; the row sums come from its standardised
/// σ-parity.
pub fn ensemble_census_tau(t: &TauVector) -> Result<EnsembleCensus> {
    let sigma = sigma_from_tau(t)?.to_matrix();
    build(t, &sigma)
}

/// `(k⌊(k-1)/2⌋⌈(k-1)/2⌉ - C(k,3)) / 2`, the most equiparity squares an
/// ensemble on `k` columns can hold when `C(n,2)` is odd.
pub fn max_equiparity(k: usize) -> usize {
    let lo = (k - 1) / 2;
    let hi = k - 1 - lo;
    (k * lo * hi - binomial(k, 3)) / 2
}

/// One check of [`check_equiparity_laws`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Columns (0-based) of the first failing instance, if any.
    pub witness: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquiparityReport {
    /// Only the checks that apply to the census's `k` and `n`.
    pub checks: Vec<CheckOutcome>,
}

impl EquiparityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Evaluates the bounds and congruences on the number of equiparity squares.
///
/// With `k = n + 1` and `n` known:
/// - `n ≡ 0`: `x` is even and at least `n(n+1)(n-4)/24`;
/// - `n ≡ 1`: `x >= (n+1)(n-1)(n-3)/24`;
/// - `n ≡ 2, 3`: `x ≡ ⌈n/4⌉ (mod 4)` and `x >= ⌈n/4⌉`.
///
/// For any `k` with `n ≡ 2, 3`: `x <= max_equiparity(k)`, and every four
/// columns carry at most two equiparity squares.
pub fn check_equiparity_laws(c: &EnsembleCensus) -> EquiparityReport {
    let mut checks = Vec::new();
    let x = c.x;
    let residue = c.order.class().residue();
    if let Some(n) = c.order.exact().filter(|&n| n + 1 == c.k) {
        match residue {
            0 => {
                let bound = n * (n + 1) * (n - 4) / 24;
                checks.push(CheckOutcome {
                    name: "equiparity-even",
                    passed: x.is_multiple_of(2),
                    detail: format!("x = {x}"),
                    witness: None,
                });
                checks.push(CheckOutcome {
                    name: "equiparity-lower-bound",
                    passed: x >= bound,
                    detail: format!("x = {x}, bound {bound}"),
                    witness: None,
                });
            }
            1 => {
                let bound = (n + 1) * (n - 1) * (n - 3) / 24;
                checks.push(CheckOutcome {
                    name: "equiparity-lower-bound",
                    passed: x >= bound,
                    detail: format!("x = {x}, bound {bound}"),
                    witness: None,
                });
            }
            _ => {
                let q = n.div_ceil(4);
                checks.push(CheckOutcome {
                    name: "equiparity-congruence",
                    passed: x % 4 == q % 4,
                    detail: format!("x = {x}, expected {} (mod 4)", q % 4),
                    witness: None,
                });
                checks.push(CheckOutcome {
                    name: "equiparity-lower-bound",
                    passed: x >= q,
                    detail: format!("x = {x}, bound {q}"),
                    witness: None,
                });
            }
        }
    }
    if residue >= 2 {
        let cap = max_equiparity(c.k);
        checks.push(CheckOutcome {
            name: "equiparity-upper-bound",
            passed: x <= cap,
            detail: format!("x = {x}, bound {cap}"),
            witness: None,
        });
        checks.push(four_column_cap(c));
    }
    EquiparityReport { checks }
}

fn four_column_cap(c: &EnsembleCensus) -> CheckOutcome {
    let k = c.k;
    let equi: Vec<bool> = c.triple_types.iter().map(|t| c.is_equiparity(t)).collect();
    let rank = |a: usize, b: usize, d: usize| {
        // Lexicographic rank of the triple a < b < d.
        let before_a: usize = (0..a).map(|x| binomial(k - 1 - x, 2)).sum();
        let before_b: usize = (a + 1..b).map(|y| k - 1 - y).sum();
        before_a + before_b + (d - b - 1)
    };
    let mut failures = 0;
    let mut witness = None;
    for a in 0..k {
        for b in a + 1..k {
            for d in b + 1..k {
                for e in d + 1..k {
                    let count = [rank(a, b, d), rank(a, b, e), rank(a, d, e), rank(b, d, e)]
                        .iter()
                        .filter(|&&r| equi[r])
                        .count();
                    if count > 2 {
                        failures += 1;
                        witness.get_or_insert_with(|| vec![a, b, d, e]);
                    }
                }
            }
        }
    }
    CheckOutcome {
        name: "four-column-cap",
        passed: failures == 0,
        detail: format!("{failures} four-column subset(s) with more than 2 equiparity squares"),
        witness,
    }
}

/// Row sums `μ_1, ..., μ_{n+1}` of a σ-matrix on `n + 1` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodSequence {
    pub n: usize,
    pub terms: Vec<usize>,
}

impl GoodSequence {
    pub fn new(n: usize, terms: Vec<usize>) -> Result<Self> {
        if terms.len() != n + 1 {
            return Err(Error::Dimension(format!("expected {} terms, got {}", n + 1, terms.len())));
        }
        Ok(GoodSequence { n, terms })
    }

    fn prefix_sums(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.terms
            .iter()
            .scan(0, |acc, &t| {
                *acc += t;
                Some(*acc)
            })
            .enumerate()
            .map(|(idx, s)| (idx + 1, s))
    }

    /// `Σ_{i<=m} μ_i <= nm - C(m,2)` for every `m`.
    pub fn is_good(&self) -> bool {
        self.prefix_sums().all(|(m, s)| s + binomial(m, 2) <= self.n * m)
    }

    /// `Σ_{i<=m} μ_i >= nm - C(m,2) - 1` for every `m`.
    pub fn meets_greedy_bound(&self) -> bool {
        self.prefix_sums().all(|(m, s)| s + binomial(m, 2) + 1 >= self.n * m)
    }

    /// Interchanges terms `c` and `c + 1` (0-based) when `μ_c = μ_{c+1} - 2`.
    pub fn interchange(&self, c: usize) -> Option<GoodSequence> {
        let (a, b) = (*self.terms.get(c)?, *self.terms.get(c + 1)?);
        if a + 2 != b {
            return None;
        }
        let mut terms = self.terms.clone();
        terms.swap(c, c + 1);
        Some(GoodSequence { n: self.n, terms })
    }

    pub fn sum(&self) -> usize {
        self.terms.iter().sum()
    }
}

/// `μ_1 = μ_2 = μ_3 = n - 1`, `μ_4 = n - 3`, `μ_i = μ_{i-4} - 4`: the row
/// sums that minimise the number of equiparity squares.
pub fn optimal_mu(n: usize) -> Result<GoodSequence> {
    if !matches!(n % 4, 2 | 3) {
        return Err(Error::Precondition(format!("need n = 2 or 3 (mod 4), got {n}")));
    }
    let mut terms: Vec<usize> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = if i < 3 {
            n - 1
        } else if i == 3 {
            n - 3
        } else {
            terms[i - 4] - 4
        };
        terms.push(t);
    }
    GoodSequence::new(n, terms)
}
