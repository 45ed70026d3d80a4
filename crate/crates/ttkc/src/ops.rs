//! Queries and transformations over tensor-train representations.
//!
//! Queries (`ct`, `co`, `va`, `eq`, `se`, `ce`, `im`, `weighted_ct`) never
//! change the function; transformations (`and_bc`, `or_bc`, `not_c`, `cd`,
//! `sfo`, and the guarded folds `and_c`, `or_c`, `fo`) return new trains.
//! Everything reduces to the sum / Hadamard / inner-product kernels after
//! aligning mappings, so all counting is exact.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::constructions::{clause_tt, term_tt, Clause, Term};
use crate::error::{Error, Result};
use crate::tt::{self, TensorTrain};

/// Rank ceiling for the unbounded folds (`and_c`, `or_c`, `fo`), which are
/// exact but blow up multiplicatively. Exceeding the ceiling is an error
/// rather than silent exponential memory use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankGuard {
    limit: usize,
}

impl RankGuard {
    pub const DEFAULT_LIMIT: usize = 4096;

    pub fn new(limit: usize) -> RankGuard {
        RankGuard { limit }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    fn check(&self, predicted: usize, index: usize) -> Result<()> {
        if predicted > self.limit {
            return Err(Error::RankGuardExceeded {
                index,
                rank: predicted,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for RankGuard {
    fn default() -> RankGuard {
        RankGuard::new(RankGuard::DEFAULT_LIMIT)
    }
}

/// Exact model count: the inner product with the all-ones train over the
/// mapped modes, times `2^(n - m)` for the don't-care variables.
pub fn ct(f: &TensorTrain) -> BigUint {
    let ones = TensorTrain::ones(f.arity(), f.map().to_vec()).expect("ones over same map");
    let raw = tt::inner(f, &ones).expect("aligned by construction");
    debug_assert!(!raw.is_negative(), "Boolean train with negative count");
    let count = raw.magnitude().clone();
    count << (f.arity() - f.modes())
}

/// Consistency: does `f` have a model?
pub fn co(f: &TensorTrain) -> bool {
    !ct(f).is_zero()
}

/// Validity: does `f` evaluate to 1 on every assignment?
pub fn va(f: &TensorTrain) -> bool {
    ct(f) == BigUint::one() << f.arity()
}

/// Per-variable literal weights `(negative, positive)` for weighted counting.
/// Exactly one pair per variable, all nonnegative rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpec {
    pairs: Vec<(BigRational, BigRational)>,
}

impl WeightSpec {
    pub fn new(pairs: Vec<(BigRational, BigRational)>) -> Result<WeightSpec> {
        for (i, (neg, pos)) in pairs.iter().enumerate() {
            if neg.is_negative() || pos.is_negative() {
                return Err(Error::NegativeWeight(i + 1));
            }
        }
        Ok(WeightSpec { pairs })
    }

    /// Unit weights: weighted counting degenerates to plain counting.
    pub fn units(arity: usize) -> WeightSpec {
        WeightSpec {
            pairs: vec![(BigRational::one(), BigRational::one()); arity],
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(negative, positive)` weights of a 1-based variable.
    pub fn of(&self, var: usize) -> &(BigRational, BigRational) {
        &self.pairs[var - 1]
    }
}

/// Weighted model count: the inner product against the rank-1 real-valued
/// weight train over the mapped modes, times `prod (neg_i + pos_i)` over the
/// unmapped variables. Exact rational arithmetic throughout.
pub fn weighted_ct(f: &TensorTrain, w: &WeightSpec) -> Result<BigRational> {
    if w.len() != f.arity() {
        return Err(Error::WeightArityMismatch {
            given: w.len(),
            arity: f.arity(),
        });
    }
    // sweep: v_{i+1} = sum_a w_a(pi(i)) * (v_i * A_i(., a, .))
    let mut v = vec![BigRational::one()];
    for (core, &var) in f.cores().iter().zip(f.map()) {
        let (wneg, wpos) = w.of(var);
        let mut next = vec![BigRational::zero(); core.right_rank()];
        for (mode, weight) in [(0, wneg), (1, wpos)] {
            if weight.is_zero() {
                continue;
            }
            for (l, r, e) in core.slice_nonzeros(mode) {
                if v[l].is_zero() {
                    continue;
                }
                let contrib = &v[l] * weight;
                if e > 0 {
                    next[r] += contrib;
                } else {
                    next[r] -= contrib;
                }
            }
        }
        v = next;
    }
    let mut total = v.pop().expect("boundary rank 1");
    for var in 1..=f.arity() {
        if !f.is_mapped(var) {
            let (wneg, wpos) = w.of(var);
            total *= wneg + wpos;
        }
    }
    Ok(total)
}

/// Equivalence: after aligning, `f . g`, `1 . f`, and `1 . g` must all be
/// equal. Sound and complete because the tensors are 0/1-valued.
pub fn eq(f: &TensorTrain, g: &TensorTrain) -> Result<bool> {
    let (a, b) = tt::align(f, g)?;
    let ones = TensorTrain::ones(a.arity(), a.map().to_vec())?;
    let fg = tt::inner(&a, &b)?;
    let f1 = tt::inner(&a, &ones)?;
    let g1 = tt::inner(&b, &ones)?;
    Ok(fg == f1 && f1 == g1)
}

/// Sentential entailment `f |= g`: after aligning, `f . g = 1 . f`.
pub fn se(f: &TensorTrain, g: &TensorTrain) -> Result<bool> {
    let (a, b) = tt::align(f, g)?;
    let ones = TensorTrain::ones(a.arity(), a.map().to_vec())?;
    Ok(tt::inner(&a, &b)? == tt::inner(&a, &ones)?)
}

/// Clausal entailment `f |= clause`. The empty clause is entailed exactly by
/// inconsistent functions.
pub fn ce(f: &TensorTrain, clause: &Clause) -> Result<bool> {
    if clause.is_empty() {
        return Ok(!co(f));
    }
    se(f, &clause_tt(clause, f.arity())?)
}

/// Implicant check `term |= f`. The empty term is the constant-true function,
/// so it implies exactly the valid ones.
pub fn im(f: &TensorTrain, term: &Term) -> Result<bool> {
    if term.is_empty() {
        return Ok(va(f));
    }
    se(&term_tt(term, f.arity())?, f)
}

/// Conjunction of two functions: the Hadamard product of the aligned trains.
pub fn and_bc(f: &TensorTrain, g: &TensorTrain) -> Result<TensorTrain> {
    let (a, b) = tt::align(f, g)?;
    tt::hadamard(&a, &b)
}

/// Negation: `1 + (-f)`.
pub fn not_c(f: &TensorTrain) -> Result<TensorTrain> {
    let ones = TensorTrain::ones(f.arity(), f.map().to_vec())?;
    tt::sum(&ones, &f.negate_scalar())
}

/// Disjunction via De Morgan: `1 - ((1 - f) o (1 - g))` on aligned trains.
pub fn or_bc(f: &TensorTrain, g: &TensorTrain) -> Result<TensorTrain> {
    let (a, b) = tt::align(f, g)?;
    not_c(&tt::hadamard(&not_c(&a)?, &not_c(&b)?)?)
}

/// Conditioning `f | term`: for a positive literal, the 1-slice of the
/// variable's core is copied over the 0-slice (and symmetrically for a
/// negative literal). Literals on unmapped variables are no-ops; mapping and
/// ranks never change.
pub fn cd(f: &TensorTrain, term: &Term) -> Result<TensorTrain> {
    let mut out = f.clone();
    for lit in term.literals() {
        if lit.var > f.arity() {
            return Err(Error::BadLiteral(format!(
                "x{} out of range for arity {}",
                lit.var,
                f.arity()
            )));
        }
        out = condition_literal(&out, lit.var, lit.positive);
    }
    Ok(out)
}

fn condition_literal(f: &TensorTrain, var: usize, value: bool) -> TensorTrain {
    let Some(pos) = f.position_of(var) else {
        return f.clone();
    };
    let core = f.core(pos);
    let (keep, overwrite) = if value { (1, 0) } else { (0, 1) };
    let new_core = crate::tt::TernaryCore::from_fn(
        core.left_rank(),
        core.right_rank(),
        |l, mode, r| {
            let m = if mode == overwrite { keep } else { mode };
            core.get(l, m, r)
        },
    )
    .expect("slice copy keeps shape and ternary entries");
    let mut cores = f.cores().to_vec();
    cores[pos] = new_core;
    TensorTrain::new(f.arity(), cores, f.map().to_vec()).expect("shape unchanged")
}

/// Single forgetting: `exists x_var . f = (f | x_var) or (f | not x_var)`.
/// If the variable is unmapped, `f` does not depend on it and is returned
/// unchanged.
pub fn sfo(f: &TensorTrain, var: usize) -> Result<TensorTrain> {
    if f.position_of(var).is_none() {
        return Ok(f.clone());
    }
    or_bc(
        &condition_literal(f, var, true),
        &condition_literal(f, var, false),
    )
}

/// Left fold of `and_bc` over a list. Correct but with multiplicative rank
/// growth; the guard aborts before a step would exceed its ceiling.
pub fn and_c(fs: &[TensorTrain], guard: RankGuard) -> Result<TensorTrain> {
    fold_bc(fs, guard, FoldKind::And)
}

/// Left fold of `or_bc`, same growth caveat as `and_c`.
pub fn or_c(fs: &[TensorTrain], guard: RankGuard) -> Result<TensorTrain> {
    fold_bc(fs, guard, FoldKind::Or)
}

enum FoldKind {
    And,
    Or,
}

fn fold_bc(fs: &[TensorTrain], guard: RankGuard, kind: FoldKind) -> Result<TensorTrain> {
    let Some(first) = fs.first() else {
        return Err(Error::EmptyList);
    };
    guard.check(first.rank(), 0)?;
    let mut acc = first.clone();
    for (index, g) in fs.iter().enumerate().skip(1) {
        let (a, b) = tt::align(&acc, g)?;
        let predicted = a
            .bond_dims()
            .iter()
            .zip(b.bond_dims())
            .map(|(&r, &q)| match kind {
                FoldKind::And => r * q,
                FoldKind::Or => (r + 1) * (q + 1) + 1,
            })
            .max()
            .unwrap();
        guard.check(predicted, index)?;
        acc = match kind {
            FoldKind::And => tt::hadamard(&a, &b)?,
            FoldKind::Or => or_bc(&a, &b)?,
        };
    }
    Ok(acc)
}

/// Forgetting of a variable set, exposed only as a guarded fold of `sfo`
/// (it cannot be polytime in general).
pub fn fo(f: &TensorTrain, vars: &[usize], guard: RankGuard) -> Result<TensorTrain> {
    let mut acc = f.clone();
    for (index, &var) in vars.iter().enumerate() {
        if acc.position_of(var).is_some() {
            let predicted = acc
                .bond_dims()
                .iter()
                .map(|&r| (r + 1) * (r + 1) + 1)
                .max()
                .unwrap();
            guard.check(predicted, index)?;
        }
        acc = sfo(&acc, var)?;
    }
    Ok(acc)
}

/// A partial assignment emitted by model enumeration: some mapped variables
/// fixed to a value, everything else don't-care. Don't-cares on mapped
/// variables appear when enumeration proves the conditioned function valid
/// and stops early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cube {
    arity: usize,
    entries: Vec<(usize, bool)>,
}

impl Cube {
    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Fixed `(variable, value)` pairs, ascending by variable.
    pub fn assignments(&self) -> &[(usize, bool)] {
        &self.entries
    }

    pub fn value(&self, var: usize) -> Option<bool> {
        self.entries
            .binary_search_by_key(&var, |&(v, _)| v)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Number of full models the cube expands to: `2^(arity - fixed)`.
    pub fn expansion_count(&self) -> BigUint {
        BigUint::one() << (self.arity - self.entries.len())
    }

    /// All full assignments covered by the cube, in lexicographic order.
    pub fn models(&self) -> impl Iterator<Item = Vec<bool>> + '_ {
        let free: Vec<usize> = (1..=self.arity)
            .filter(|v| self.value(*v).is_none())
            .collect();
        let count = 1usize
            .checked_shl(free.len() as u32)
            .expect("expansion too large to iterate");
        (0..count).map(move |i| {
            let mut a = vec![false; self.arity];
            for &(v, val) in &self.entries {
                a[v - 1] = val;
            }
            for (k, &v) in free.iter().enumerate() {
                a[v - 1] = (i >> (free.len() - 1 - k)) & 1 == 1;
            }
            a
        })
    }
}

impl std::fmt::Display for Cube {
    /// One character per variable in index order: `0`, `1`, or `-`.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for var in 1..=self.arity {
            if var > 1 {
                write!(out, " ")?;
            }
            match self.value(var) {
                Some(true) => write!(out, "1")?,
                Some(false) => write!(out, "0")?,
                None => write!(out, "-")?,
            }
        }
        Ok(())
    }
}

/// Model enumeration: a stream of pairwise disjoint cubes whose expansions
/// are exactly the models of `f`. Branches on mapped variables in mapping
/// order, pruning inconsistent branches and closing valid ones early, so
/// each emitted cube costs a constant number of counting sweeps.
pub fn me(f: &TensorTrain, limit: Option<u64>) -> ModelCubes {
    ModelCubes {
        stack: vec![(f.clone(), Vec::new())],
        emitted: BigUint::zero(),
        limit: limit.map(BigUint::from),
    }
}

pub struct ModelCubes {
    /// Depth-first worklist: conditioned train plus the values assigned to
    /// its first `prefix.len()` mapped variables.
    stack: Vec<(TensorTrain, Vec<bool>)>,
    emitted: BigUint,
    limit: Option<BigUint>,
}

impl Iterator for ModelCubes {
    type Item = Cube;

    fn next(&mut self) -> Option<Cube> {
        if let Some(limit) = &self.limit {
            if &self.emitted >= limit {
                return None;
            }
        }
        while let Some((current, prefix)) = self.stack.pop() {
            let count = ct(&current);
            if count.is_zero() {
                continue;
            }
            if count == BigUint::one() << current.arity() {
                // every extension of the prefix is a model
                let entries: Vec<(usize, bool)> = current.map()[..prefix.len()]
                    .iter()
                    .copied()
                    .zip(prefix)
                    .collect();
                let cube = Cube {
                    arity: current.arity(),
                    entries,
                };
                self.emitted += cube.expansion_count();
                return Some(cube);
            }
            // neither empty nor valid, so some mode is still unassigned
            debug_assert!(prefix.len() < current.modes());
            let var = current.map()[prefix.len()];
            let mut high = prefix.clone();
            high.push(true);
            let mut low = prefix;
            low.push(false);
            self.stack
                .push((condition_literal(&current, var, true), high));
            // pushed last so the low branch is popped first: cubes come out
            // in lexicographic order
            self.stack
                .push((condition_literal(&current, var, false), low));
        }
        None
    }
}
