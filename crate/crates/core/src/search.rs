//! Brute-force oracles at tiny orders: Latin-square enumeration, parity-type
//! surveys and backtracking search for arrays with a prescribed τ-parity.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::oa::OrthogonalArray;
use crate::order::{triples, OrderClass};
use crate::parity::{latin_square_parities, tau_component, tau_parity, ParityTriple, TauVector};

/// Largest order the Latin-square enumerator accepts.
pub const MAX_ENUMERATION_ORDER: usize = 6;

const EMPTY: u8 = u8::MAX;

/// Every Latin square of order `n`, rows top-down, cells left to right,
/// symbols ascending.
pub fn enumerate_latin_squares(n: usize) -> Result<LatinSquares> {
    LatinSquares::new(n, None)
}

/// Deterministic stream of Latin squares. The last square yielded is the
/// cursor; [`LatinSquares::resume_after`] continues from it.
pub struct LatinSquares {
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u16>,
    col_used: Vec<u16>,
    started: bool,
    done: bool,
}

impl LatinSquares {
    fn new(n: usize, cursor: Option<&LatinSquare>) -> Result<Self> {
        if n == 0 || n > MAX_ENUMERATION_ORDER {
            return Err(Error::Precondition(format!(
                "Latin-square enumeration needs 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}"
            )));
        }
        let mut it = LatinSquares {
            n,
            cells: vec![EMPTY; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            started: false,
            done: false,
        };
        if let Some(sq) = cursor {
            if sq.order() != n {
                return Err(Error::Dimension(format!("cursor has order {}, expected {n}", sq.order())));
            }
            for (p, &s) in sq.cells().iter().enumerate() {
                it.place(p, s);
            }
            it.started = true;
        }
        Ok(it)
    }

    /// Continues the stream after `cursor`, which must be a Latin square.
    pub fn resume_after(cursor: &LatinSquare) -> Result<Self> {
        LatinSquares::new(cursor.order(), Some(cursor))
    }

    /// The last square yielded, if any.
    pub fn cursor(&self) -> Option<LatinSquare> {
        if self.started && !self.done {
            Some(LatinSquare::from_cells_unchecked(self.n, self.cells.clone()))
        } else {
            None
        }
    }

    #[inline]
    fn place(&mut self, p: usize, s: u8) {
        let (r, c) = (p / self.n, p % self.n);
        self.cells[p] = s;
        self.row_used[r] |= 1 << s;
        self.col_used[c] |= 1 << s;
    }

    #[inline]
    fn unplace(&mut self, p: usize) {
        let (r, c) = (p / self.n, p % self.n);
        let s = self.cells[p];
        self.row_used[r] &= !(1 << s);
        self.col_used[c] &= !(1 << s);
    }

    fn advance(&mut self) -> bool {
        let total = self.n * self.n;
        let mut p = if self.started { total - 1 } else { 0 };
        self.started = true;
        loop {
            let start = if self.cells[p] == EMPTY {
                0
            } else {
                self.unplace(p);
                self.cells[p] + 1
            };
            let (r, c) = (p / self.n, p % self.n);
            let blocked = self.row_used[r] | self.col_used[c];
            let next = (start..self.n as u8).find(|&s| blocked & (1 << s) == 0);
            match next {
                Some(s) => {
                    self.place(p, s);
                    if p + 1 == total {
                        return true;
                    }
                    p += 1;
                    self.cells[p] = EMPTY;
                }
                None => {
                    self.cells[p] = EMPTY;
                    if p == 0 {
                        return false;
                    }
                    p -= 1;
                }
            }
        }
    }
}

impl Iterator for LatinSquares {
    type Item = LatinSquare;

    fn next(&mut self) -> Option<LatinSquare> {
        if self.done {
            return None;
        }
        if self.advance() {
            Some(LatinSquare::from_cells_unchecked(self.n, self.cells.clone()))
        } else {
            self.done = true;
            None
        }
    }
}

/// The parity types realised by Latin squares of order `n`, sorted by index.
/// Stops as soon as all four plausible types have been seen.
pub fn achieved_parity_types(n: usize) -> Result<Vec<ParityTriple>> {
    let mut seen = [false; 8];
    let mut count = 0;
    for sq in enumerate_latin_squares(n)? {
        let idx = latin_square_parities(&sq).index();
        if !seen[idx] {
            seen[idx] = true;
            count += 1;
            if count == 4 {
                break;
            }
        }
    }
    Ok((0..8).filter(|&i| seen[i]).map(ParityTriple::from_index).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchTarget {
    Any,
    /// The full τ-parity must match.
    Tau(TauVector),
    /// Every column triple `c1 < c2 < c3` must have its type
    /// `(τ^{c1}_{c2c3}, τ^{c2}_{c1c3}, τ^{c3}_{c1c2})` in this set.
    Types(Vec<ParityTriple>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    FirstHit,
    Randomized { seed: u64, restarts: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    pub k: usize,
    pub n: usize,
    pub target: SearchTarget,
    pub mode: SearchMode,
    /// Cell placements allowed per attempt. Ignored in exhaustive mode.
    pub node_budget: u64,
}

impl SearchSpec {
    pub fn new(k: usize, n: usize, target: SearchTarget, mode: SearchMode) -> Self {
        SearchSpec { k, n, target, mode, node_budget: 50_000_000 }
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (k, n) = (self.k, self.n);
        if k < 3 || !(2..=16).contains(&n) {
            return Err(Error::Precondition(format!("search needs k >= 3 and 2 <= n <= 16, got k={k}, n={n}")));
        }
        if self.mode == SearchMode::Exhaustive && !matches!((k, n), (3, 0..=6) | (4, 0..=5)) {
            return Err(Error::Precondition(format!(
                "exhaustive search is limited to n <= 6 at k=3 and n <= 5 at k=4, got k={k}, n={n}"
            )));
        }
        match &self.target {
            SearchTarget::Any => {}
            SearchTarget::Tau(t) => {
                if t.k() != k || t.order().class() != OrderClass::of(n) {
                    return Err(Error::Dimension(format!("target τ is for k={}, expected k={k}", t.k())));
                }
                if let Some(m) = t.order().exact() {
                    if m != n {
                        return Err(Error::Dimension(format!("target τ is for n={m}, expected n={n}")));
                    }
                }
                if !crate::parity::check_plausible(t).plausible {
                    return Err(Error::NotPlausible("target τ-parity is not plausible".into()));
                }
            }
            SearchTarget::Types(types) => {
                let ok = ParityTriple::plausible(OrderClass::of(n));
                if let Some(bad) = types.iter().find(|t| !ok.contains(t)) {
                    return Err(Error::NotPlausible(format!("type {} is not plausible for n={n}", bad.label())));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(OrthogonalArray),
    /// The whole space was explored without a match.
    CertifiedNone,
    /// The node budget ran out on every attempt.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes: u64,
    /// Matching arrays seen; only counted in exhaustive mode.
    pub matches: Option<u64>,
    pub seed: Option<u64>,
}

/// Backtracking extension search. Column 0 and 1 are the row and column
/// index; each further column is a Latin square orthogonal to the earlier
/// ones. Parity is checked only on completed squares.
pub fn find_oa_with_parity(spec: &SearchSpec) -> Result<SearchReport> {
    spec.validate()?;
    match spec.mode {
        SearchMode::Exhaustive => {
            let mut s = Searcher::new(spec, None, u64::MAX, true);
            let found = s.run();
            let outcome = match s.first.take() {
                Some(a) => SearchOutcome::Found(a),
                None => {
                    debug_assert!(!found);
                    SearchOutcome::CertifiedNone
                }
            };
            Ok(SearchReport { outcome, nodes: s.nodes, matches: Some(s.matches), seed: None })
        }
        SearchMode::FirstHit => {
            let mut s = Searcher::new(spec, None, spec.node_budget, false);
            let outcome = s.outcome();
            Ok(SearchReport { outcome, nodes: s.nodes, matches: None, seed: None })
        }
        SearchMode::Randomized { seed, restarts } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut nodes = 0;
            for _ in 0..restarts.max(1) {
                let attempt = ChaCha8Rng::from_rng(&mut rng);
                let mut s = Searcher::new(spec, Some(attempt), spec.node_budget, false);
                let outcome = s.outcome();
                nodes += s.nodes;
                if outcome != SearchOutcome::BudgetExhausted {
                    return Ok(SearchReport { outcome, nodes, matches: None, seed: Some(seed) });
                }
            }
            Ok(SearchReport { outcome: SearchOutcome::BudgetExhausted, nodes, matches: None, seed: Some(seed) })
        }
    }
}

struct Searcher<'a> {
    spec: &'a SearchSpec,
    n: usize,
    /// `columns[m]` holds column `m + 2`, indexed by `r * n + c`.
    columns: Vec<Vec<u8>>,
    rng: Option<ChaCha8Rng>,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    count_all: bool,
    matches: u64,
    first: Option<OrthogonalArray>,
}

impl<'a> Searcher<'a> {
    fn new(spec: &'a SearchSpec, rng: Option<ChaCha8Rng>, budget: u64, count_all: bool) -> Self {
        let n = spec.n;
        Searcher {
            spec,
            n,
            columns: vec![vec![EMPTY; n * n]; spec.k - 2],
            rng,
            budget,
            nodes: 0,
            exhausted: false,
            count_all,
            matches: 0,
            first: None,
        }
    }

    fn outcome(&mut self) -> SearchOutcome {
        if self.run() {
            SearchOutcome::Found(self.first.take().expect("match recorded"))
        } else if self.exhausted {
            SearchOutcome::BudgetExhausted
        } else {
            SearchOutcome::CertifiedNone
        }
    }

    /// True when a match was found and the search should stop.
    fn run(&mut self) -> bool {
        let n = self.n;
        let mut pairs = vec![vec![false; n * n]; self.columns.len() * self.columns.len()];
        self.fill(0, 0, &mut vec![0u16; n], &mut vec![0u16; n], &mut pairs)
    }

    fn prefix_array(&self, upto: usize) -> OrthogonalArray {
        let n = self.n;
        let k = upto + 3;
        let mut cells = Vec::with_capacity(k * n * n);
        for r in 0..n {
            for c in 0..n {
                cells.push(r as u8);
                cells.push(c as u8);
                for col in &self.columns[..=upto] {
                    cells.push(col[r * n + c]);
                }
            }
        }
        OrthogonalArray::from_sorted_unchecked(k, n, cells)
    }

    /// Checks every component involving the newly completed column `m + 2`.
    fn prefix_ok(&self, m: usize) -> bool {
        let last = m + 2;
        match &self.spec.target {
            SearchTarget::Any => true,
            SearchTarget::Tau(t) => {
                let a = self.prefix_array(m);
                for c in 0..=last {
                    for i in 0..=last {
                        for j in (i + 1)..=last {
                            if c == i || c == j || (c != last && j != last) {
                                continue;
                            }
                            if tau_component(&a, c, i, j).expect("distinct columns") != t.get(c, i, j) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
            SearchTarget::Types(types) => {
                let a = self.prefix_array(m);
                triples(last + 1).filter(|&(_, _, c3)| c3 == last).all(|(c1, c2, c3)| {
                    let ty = ParityTriple {
                        pr: tau_component(&a, c1, c2, c3).expect("distinct columns"),
                        pc: tau_component(&a, c2, c1, c3).expect("distinct columns"),
                        ps: tau_component(&a, c3, c1, c2).expect("distinct columns"),
                    };
                    types.contains(&ty)
                })
            }
        }
    }

    fn fill(
        &mut self,
        m: usize,
        p: usize,
        row_used: &mut [u16],
        col_used: &mut [u16],
        pairs: &mut [Vec<bool>],
    ) -> bool {
        let n = self.n;
        let squares = self.columns.len();
        if p == n * n {
            if !self.prefix_ok(m) {
                return false;
            }
            if m + 1 == squares {
                let a = self.prefix_array(m);
                assert!(matches_target(&self.spec.target, &a), "search produced an array missing its target");
                self.matches += 1;
                if self.first.is_none() {
                    self.first = Some(a);
                }
                return !self.count_all;
            }
            return self.fill(m + 1, 0, &mut vec![0u16; n], &mut vec![0u16; n], pairs);
        }
        let (r, c) = (p / n, p % n);
        let mut symbols: Vec<u8> = (0..n as u8).collect();
        if let Some(rng) = self.rng.as_mut() {
            symbols.shuffle(rng);
        }
        for s in symbols {
            if (row_used[r] | col_used[c]) & (1 << s) != 0 {
                continue;
            }
            if (0..m).any(|prev| pairs[prev * squares + m][self.columns[prev][p] as usize * n + s as usize]) {
                continue;
            }
            if self.nodes >= self.budget {
                self.exhausted = true;
                return false;
            }
            self.nodes += 1;
            self.columns[m][p] = s;
            row_used[r] |= 1 << s;
            col_used[c] |= 1 << s;
            for prev in 0..m {
                pairs[prev * squares + m][self.columns[prev][p] as usize * n + s as usize] = true;
            }
            let done = self.fill(m, p + 1, row_used, col_used, pairs);
            for prev in 0..m {
                pairs[prev * squares + m][self.columns[prev][p] as usize * n + s as usize] = false;
            }
            row_used[r] &= !(1 << s);
            col_used[c] &= !(1 << s);
            self.columns[m][p] = EMPTY;
            if done || self.exhausted {
                return done;
            }
        }
        false
    }
}

/// Recomputes the τ-parity of `a` from scratch and compares it to `target`.
pub fn matches_target(target: &SearchTarget, a: &OrthogonalArray) -> bool {
    let t = tau_parity(a);
    match target {
        SearchTarget::Any => true,
        SearchTarget::Tau(want) => want.k() == t.k() && want.components().eq(t.components()),
        SearchTarget::Types(types) => triples(a.k()).all(|(c1, c2, c3)| {
            let ty = ParityTriple { pr: t.get(c1, c2, c3), pc: t.get(c2, c1, c3), ps: t.get(c3, c1, c2) };
            types.contains(&ty)
        }),
    }
}
