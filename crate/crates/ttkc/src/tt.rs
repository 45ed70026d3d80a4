//! The tensor-train data model and its exact linear-algebra kernel.
//!
//! A Boolean function over `n` variables is stored as a chain of 3-dimensional
//! cores with entries in `{-1, 0, 1}` together with a strictly increasing
//! mapping from core positions to variable indices. Variables outside the
//! image of the mapping are don't-cares of the represented function.
//!
//! All values are immutable after construction; every kernel is a pure
//! function returning new values. Arithmetic in the evaluation and
//! inner-product sweeps is arbitrary precision.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// One 3-dimensional core of shape `left_rank x 2 x right_rank` with entries
/// in `{-1, 0, 1}`, stored row-major over `(left, mode, right)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TernaryCore {
    left_rank: usize,
    right_rank: usize,
    entries: Vec<i8>,
}

impl TernaryCore {
    pub fn new(left_rank: usize, right_rank: usize, entries: Vec<i8>) -> Result<TernaryCore> {
        if left_rank == 0 || right_rank == 0 {
            return Err(Error::MalformedTensorTrain(format!(
                "core ranks must be positive, got {left_rank} x 2 x {right_rank}"
            )));
        }
        if entries.len() != 2 * left_rank * right_rank {
            return Err(Error::MalformedTensorTrain(format!(
                "core of shape {left_rank} x 2 x {right_rank} needs {} entries, got {}",
                2 * left_rank * right_rank,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&e| !(-1..=1).contains(&e)) {
            return Err(Error::TernaryViolation {
                core: 0,
                value: bad as i64,
            });
        }
        Ok(TernaryCore {
            left_rank,
            right_rank,
            entries,
        })
    }

    /// Builds a core by evaluating `f(left, mode, right)` at every index.
    pub fn from_fn(
        left_rank: usize,
        right_rank: usize,
        mut f: impl FnMut(usize, usize, usize) -> i8,
    ) -> Result<TernaryCore> {
        let mut entries = Vec::with_capacity(2 * left_rank * right_rank);
        for l in 0..left_rank {
            for a in 0..2 {
                for r in 0..right_rank {
                    entries.push(f(l, a, r));
                }
            }
        }
        TernaryCore::new(left_rank, right_rank, entries)
    }

    /// The identity-slice core of Lemma-5 insertions: both slices are the
    /// `rank x rank` identity matrix.
    pub fn identity(rank: usize) -> TernaryCore {
        TernaryCore::from_fn(rank, rank, |l, _, r| (l == r) as i8).expect("identity core")
    }

    pub fn left_rank(&self) -> usize {
        self.left_rank
    }

    pub fn right_rank(&self) -> usize {
        self.right_rank
    }

    /// Number of stored entries, `2 * left_rank * right_rank`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    #[inline]
    pub fn get(&self, left: usize, mode: usize, right: usize) -> i8 {
        self.entries[(left * 2 + mode) * self.right_rank + right]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Nonzero entries of one slice as `(left, right, sign)` triples.
    pub fn slice_nonzeros(&self, mode: usize) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        (0..self.left_rank).flat_map(move |l| {
            (0..self.right_rank).filter_map(move |r| {
                let e = self.get(l, mode, r);
                (e != 0).then_some((l, r, e))
            })
        })
    }

    fn map_entries(&self, f: impl Fn(i8) -> i8) -> TernaryCore {
        TernaryCore {
            left_rank: self.left_rank,
            right_rank: self.right_rank,
            entries: self.entries.iter().map(|&e| f(e)).collect(),
        }
    }
}

/// A tensor-train representation of an `n`-ary Boolean function: cores
/// `A_1 .. A_m` plus the strictly increasing mapping from core positions to
/// 1-based variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorTrain {
    arity: usize,
    cores: Vec<TernaryCore>,
    map: Vec<usize>,
}

impl TensorTrain {
    pub fn new(arity: usize, cores: Vec<TernaryCore>, map: Vec<usize>) -> Result<TensorTrain> {
        if cores.is_empty() {
            return Err(Error::MalformedTensorTrain(
                "a train needs at least one core".into(),
            ));
        }
        if cores.len() > arity {
            return Err(Error::MalformedTensorTrain(format!(
                "{} cores over arity {arity}",
                cores.len()
            )));
        }
        if map.len() != cores.len() {
            return Err(Error::MalformedTensorTrain(format!(
                "mapping covers {} positions, train has {} cores",
                map.len(),
                cores.len()
            )));
        }
        if cores[0].left_rank() != 1 || cores[cores.len() - 1].right_rank() != 1 {
            return Err(Error::MalformedTensorTrain(
                "boundary ranks must be 1".into(),
            ));
        }
        for i in 0..cores.len() - 1 {
            if cores[i].right_rank() != cores[i + 1].left_rank() {
                return Err(Error::MalformedTensorTrain(format!(
                    "rank chain broken between cores {} and {}: {} vs {}",
                    i + 1,
                    i + 2,
                    cores[i].right_rank(),
                    cores[i + 1].left_rank()
                )));
            }
        }
        for (i, &v) in map.iter().enumerate() {
            if v == 0 || v > arity {
                return Err(Error::MalformedTensorTrain(format!(
                    "mapped variable x{v} outside 1..={arity}"
                )));
            }
            if i > 0 && map[i - 1] >= v {
                return Err(Error::MalformedTensorTrain(format!(
                    "mapping not strictly increasing at position {}",
                    i + 1
                )));
            }
        }
        Ok(TensorTrain { arity, cores, map })
    }

    /// Rank-1 all-ones train over the given mapping; evaluates to 1 everywhere.
    pub fn ones(arity: usize, map: Vec<usize>) -> Result<TensorTrain> {
        let cores = map
            .iter()
            .map(|_| TernaryCore::new(1, 1, vec![1, 1]).unwrap())
            .collect();
        TensorTrain::new(arity, cores, map)
    }

    /// Constant function as a single-mode train with both slice values equal.
    pub fn constant(arity: usize, value: bool) -> Result<TensorTrain> {
        let e = value as i8;
        TensorTrain::new(
            arity,
            vec![TernaryCore::new(1, 1, vec![e, e])?],
            vec![1],
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of modes `m`.
    pub fn modes(&self) -> usize {
        self.cores.len()
    }

    pub fn cores(&self) -> &[TernaryCore] {
        &self.cores
    }

    pub fn core(&self, i: usize) -> &TernaryCore {
        &self.cores[i]
    }

    /// The mapping from core positions (0-based here) to 1-based variables.
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_mapped(&self, var: usize) -> bool {
        self.map.binary_search(&var).is_ok()
    }

    /// 0-based core position of `var`, if mapped.
    pub fn position_of(&self, var: usize) -> Option<usize> {
        self.map.binary_search(&var).ok()
    }

    /// Bond dimensions `r_1 .. r_{m+1}` (boundaries included, so length `m + 1`).
    pub fn bond_dims(&self) -> Vec<usize> {
        let mut dims = Vec::with_capacity(self.cores.len() + 1);
        dims.push(self.cores[0].left_rank());
        for c in &self.cores {
            dims.push(c.right_rank());
        }
        dims
    }

    /// The train rank `max r_i`.
    pub fn rank(&self) -> usize {
        self.bond_dims().into_iter().max().unwrap()
    }

    /// Total number of stored entries, `sum |A_i|`.
    pub fn total_entries(&self) -> usize {
        self.cores.iter().map(|c| c.len()).sum()
    }

    pub fn nonzero_entries(&self) -> usize {
        self.cores.iter().map(|c| c.nonzeros()).sum()
    }

    /// Evaluates the represented tensor at a full assignment, as an integer.
    /// For Boolean-valued trains the result is 0 or 1; trains produced by the
    /// raw sum kernel may take other integer values.
    pub fn eval_int(&self, assignment: &[bool]) -> Result<BigInt> {
        if assignment.len() != self.arity {
            return Err(Error::ArityMismatch {
                left: assignment.len(),
                right: self.arity,
            });
        }
        let bits: Vec<bool> = self.map.iter().map(|&v| assignment[v - 1]).collect();
        Ok(self.eval_modes_int(&bits))
    }

    /// Evaluates at an assignment of the mapped modes only (`m` bits).
    pub fn eval_modes_int(&self, mode_bits: &[bool]) -> BigInt {
        debug_assert_eq!(mode_bits.len(), self.cores.len());
        let mut v = vec![BigInt::one()];
        for (core, &bit) in self.cores.iter().zip(mode_bits) {
            v = row_times_slice(&v, core, bit as usize);
        }
        debug_assert_eq!(v.len(), 1);
        v.pop().unwrap()
    }

    /// Evaluates the Boolean function at a full assignment via the
    /// left-to-right vector-matrix sweep over slice matrices.
    pub fn evaluate(&self, assignment: &[bool]) -> Result<bool> {
        let value = self.eval_int(assignment)?;
        if value.is_zero() {
            Ok(false)
        } else if value.is_one() {
            Ok(true)
        } else {
            Err(Error::NonBinaryValue(value.to_string()))
        }
    }

    /// Inserts the identity-slice core for variable `var` between cores
    /// `position` and `position + 1` (0-based gap index, so `position` ranges
    /// over `0..=m`). The represented function is unchanged; `var` becomes a
    /// mapped don't-care mode.
    pub fn insert_identity(&self, position: usize, var: usize) -> Result<TensorTrain> {
        let m = self.cores.len();
        if position > m || var == 0 || var > self.arity {
            return Err(Error::PositionViolatesOrder { position, var });
        }
        let before_ok = position == 0 || self.map[position - 1] < var;
        let after_ok = position == m || var < self.map[position];
        if !before_ok || !after_ok {
            return Err(Error::PositionViolatesOrder { position, var });
        }
        let rank = if position == 0 {
            1
        } else {
            self.cores[position - 1].right_rank()
        };
        let mut cores = self.cores.clone();
        cores.insert(position, TernaryCore::identity(rank));
        let mut map = self.map.clone();
        map.insert(position, var);
        TensorTrain::new(self.arity, cores, map)
    }

    /// Multiplies the first core by -1; the represented tensor is negated
    /// elementwise and entries stay ternary.
    pub fn negate_scalar(&self) -> TensorTrain {
        let mut cores = self.cores.clone();
        cores[0] = cores[0].map_entries(|e| -e);
        TensorTrain {
            arity: self.arity,
            cores,
            map: self.map.clone(),
        }
    }
}

/// Aligns two trains over the same arity to a common mapping (the union of
/// their mode sets) by inserting identity cores, per the largest-admissible-
/// position rule. Ranks are unchanged and each output represents its
/// original function.
pub fn align(a: &TensorTrain, b: &TensorTrain) -> Result<(TensorTrain, TensorTrain)> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            left: a.arity(),
            right: b.arity(),
        });
    }
    if a.map == b.map {
        return Ok((a.clone(), b.clone()));
    }
    Ok((extend_to_map(a, &b.map)?, extend_to_map(b, &a.map)?))
}

/// Inserts identity cores into `t` for every variable of `vars` it does not
/// map, processing missing variables right to left. Each insertion goes at
/// the largest position `w` with `map[w - 1] < var` (position 0 when the
/// variable precedes every mapped one).
fn extend_to_map(t: &TensorTrain, vars: &[usize]) -> Result<TensorTrain> {
    let mut out = t.clone();
    for &var in vars.iter().rev() {
        if out.is_mapped(var) {
            continue;
        }
        let position = out.map.partition_point(|&v| v < var);
        out = out.insert_identity(position, var)?;
    }
    Ok(out)
}

fn check_aligned(a: &TensorTrain, b: &TensorTrain) -> Result<()> {
    if a.arity() != b.arity() || a.map != b.map {
        return Err(Error::NotAligned);
    }
    Ok(())
}

/// Elementwise sum of two aligned trains via the block-diagonal core
/// construction: internal bond dimensions add, entries stay ternary.
///
/// The single-mode case has no internal bond, so the sum is taken
/// elementwise there; it fails if an entry would leave `{-1, 0, 1}`.
pub fn sum(a: &TensorTrain, b: &TensorTrain) -> Result<TensorTrain> {
    check_aligned(a, b)?;
    let m = a.modes();
    if m == 1 {
        let entries: Vec<i8> = a.cores[0]
            .entries()
            .iter()
            .zip(b.cores[0].entries())
            .map(|(&x, &y)| x.saturating_add(y))
            .collect();
        if let Some(&bad) = entries.iter().find(|&&e| !(-1..=1).contains(&e)) {
            return Err(Error::TernaryViolation {
                core: 1,
                value: bad as i64,
            });
        }
        let core = TernaryCore::new(1, 1, entries)?;
        return TensorTrain::new(a.arity(), vec![core], a.map.clone());
    }
    let mut cores = Vec::with_capacity(m);
    for i in 0..m {
        let (x, y) = (&a.cores[i], &b.cores[i]);
        let (lx, ly) = (x.left_rank(), y.left_rank());
        let (rx, ry) = (x.right_rank(), y.right_rank());
        let core = if i == 0 {
            // row concatenation [A_1 B_1]
            TernaryCore::from_fn(1, rx + ry, |_, mode, r| {
                if r < rx {
                    x.get(0, mode, r)
                } else {
                    y.get(0, mode, r - rx)
                }
            })?
        } else if i == m - 1 {
            // column concatenation [A_m; B_m]
            TernaryCore::from_fn(lx + ly, 1, |l, mode, _| {
                if l < lx {
                    x.get(l, mode, 0)
                } else {
                    y.get(l - lx, mode, 0)
                }
            })?
        } else {
            // block diagonal [A_i 0; 0 B_i]
            TernaryCore::from_fn(lx + ly, rx + ry, |l, mode, r| match (l < lx, r < rx) {
                (true, true) => x.get(l, mode, r),
                (false, false) => y.get(l - lx, mode, r - rx),
                _ => 0,
            })?
        };
        cores.push(core);
    }
    TensorTrain::new(a.arity(), cores, a.map.clone())
}

/// Hadamard (elementwise) product of two aligned trains: slice-wise Kronecker
/// product cores, bond dimensions multiply. For Boolean-valued inputs the
/// result is the conjunction tensor.
pub fn hadamard(a: &TensorTrain, b: &TensorTrain) -> Result<TensorTrain> {
    check_aligned(a, b)?;
    let mut cores = Vec::with_capacity(a.modes());
    for (x, y) in a.cores.iter().zip(&b.cores) {
        let (lx, rx) = (x.left_rank(), x.right_rank());
        let (ly, ry) = (y.left_rank(), y.right_rank());
        let mut entries = vec![0i8; 2 * lx * ly * rx * ry];
        for mode in 0..2 {
            for (l1, r1, e1) in x.slice_nonzeros(mode) {
                for (l2, r2, e2) in y.slice_nonzeros(mode) {
                    let l = l1 * ly + l2;
                    let r = r1 * ry + r2;
                    entries[(l * 2 + mode) * (rx * ry) + r] = e1 * e2;
                }
            }
        }
        cores.push(TernaryCore::new(lx * ly, rx * ry, entries)?);
    }
    TensorTrain::new(a.arity(), cores, a.map.clone())
}

/// Inner product of two aligned trains: the sum over all mode assignments of
/// the elementwise product, computed by a sweep that never materializes the
/// Kronecker-product cores. Exact (arbitrary-precision) and possibly signed.
pub fn inner(a: &TensorTrain, b: &TensorTrain) -> Result<BigInt> {
    check_aligned(a, b)?;
    // M starts as the 1x1 matrix [1]; after processing core i it holds the
    // r_{i+1} x q_{i+1} partial contraction.
    let mut m = IntMatrix::scalar_one();
    for (x, y) in a.cores.iter().zip(&b.cores) {
        let mut next = IntMatrix::zeros(x.right_rank(), y.right_rank());
        for mode in 0..2 {
            // t = X(.,mode,.)^T * M, accumulated sparsely over X's entries
            let mut t = IntMatrix::zeros(x.right_rank(), y.left_rank());
            for (l, r, e) in x.slice_nonzeros(mode) {
                t.add_scaled_row(r, &m, l, e);
            }
            // next += t * Y(.,mode,.)
            for (l, r, e) in y.slice_nonzeros(mode) {
                next.add_scaled_col(r, &t, l, e);
            }
        }
        m = next;
    }
    Ok(m.into_scalar())
}

/// Dense arbitrary-precision matrix used by the contraction sweeps.
struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    fn scalar_one() -> IntMatrix {
        IntMatrix {
            rows: 1,
            cols: 1,
            data: vec![BigInt::one()],
        }
    }

    fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    /// self[dst, .] += sign * src[src_row, .]
    fn add_scaled_row(&mut self, dst: usize, src: &IntMatrix, src_row: usize, sign: i8) {
        debug_assert_eq!(self.cols, src.cols);
        for c in 0..self.cols {
            let v = &src.data[src_row * src.cols + c];
            if v.is_zero() {
                continue;
            }
            let cell = &mut self.data[dst * self.cols + c];
            if sign > 0 {
                *cell += v;
            } else {
                *cell -= v;
            }
        }
    }

    /// self[., dst] += sign * src[., src_col]
    fn add_scaled_col(&mut self, dst: usize, src: &IntMatrix, src_col: usize, sign: i8) {
        debug_assert_eq!(self.rows, src.rows);
        for r in 0..self.rows {
            let v = &src.data[r * src.cols + src_col];
            if v.is_zero() {
                continue;
            }
            let cell = &mut self.data[r * self.cols + dst];
            if sign > 0 {
                *cell += v;
            } else {
                *cell -= v;
            }
        }
    }

    fn into_scalar(mut self) -> BigInt {
        debug_assert_eq!((self.rows, self.cols), (1, 1));
        self.data.pop().unwrap()
    }
}

/// Row vector times one slice matrix, sparsely over the core's entries.
fn row_times_slice(v: &[BigInt], core: &TernaryCore, mode: usize) -> Vec<BigInt> {
    debug_assert_eq!(v.len(), core.left_rank());
    let mut out = vec![BigInt::zero(); core.right_rank()];
    for (l, r, e) in core.slice_nonzeros(mode) {
        if v[l].is_zero() {
            continue;
        }
        if e > 0 {
            out[r] += &v[l];
        } else {
            out[r] -= &v[l];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// The worked 2x2 example: f(x1, x2) = x1 or (not x2), cores I and
    /// [[1,0],[1,1]].
    pub(crate) fn example_or_not() -> TensorTrain {
        let a1 = TernaryCore::new(1, 2, vec![1, 0, 0, 1]).unwrap();
        let a2 = TernaryCore::new(2, 1, vec![1, 0, 1, 1]).unwrap();
        TensorTrain::new(2, vec![a1, a2], vec![1, 2]).unwrap()
    }

    fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
        (0..1usize << n).map(move |i| (0..n).map(|k| (i >> (n - 1 - k)) & 1 == 1).collect())
    }

    fn brute_values(t: &TensorTrain) -> Vec<i64> {
        assignments(t.arity())
            .map(|a| t.eval_int(&a).unwrap().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn evaluate_worked_example() {
        let t = example_or_not();
        assert!(t.evaluate(&[true, false]).unwrap());
        assert!(!t.evaluate(&[false, true]).unwrap());
        // full table over (x1, x2) in 00, 01, 10, 11
        assert_eq!(brute_values(&t), vec![1, 0, 1, 1]);
    }

    #[test]
    fn evaluate_single_ones_core() {
        let t = TensorTrain::constant(3, true).unwrap();
        for a in assignments(3) {
            assert!(t.evaluate(&a).unwrap());
        }
    }

    #[test]
    fn evaluate_rejects_wrong_arity() {
        let t = example_or_not();
        assert!(matches!(
            t.evaluate(&[true]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn evaluate_flags_non_binary() {
        let t = example_or_not();
        let doubled = sum(&t, &t).unwrap();
        assert!(matches!(
            doubled.evaluate(&[true, false]),
            Err(Error::NonBinaryValue(_))
        ));
    }

    #[test]
    fn construction_rejects_broken_chain() {
        let a1 = TernaryCore::new(1, 2, vec![1, 0, 0, 1]).unwrap();
        let a2 = TernaryCore::new(3, 1, vec![1, 0, 1, 1, 0, 0]).unwrap();
        assert!(matches!(
            TensorTrain::new(2, vec![a1, a2], vec![1, 2]),
            Err(Error::MalformedTensorTrain(_))
        ));
    }

    #[test]
    fn construction_rejects_non_increasing_map() {
        let a1 = TernaryCore::new(1, 1, vec![1, 1]).unwrap();
        let a2 = TernaryCore::new(1, 1, vec![1, 1]).unwrap();
        assert!(TensorTrain::new(3, vec![a1, a2], vec![2, 2]).is_err());
    }

    #[test]
    fn core_rejects_non_ternary() {
        assert!(matches!(
            TernaryCore::new(1, 1, vec![2, 0]),
            Err(Error::TernaryViolation { .. })
        ));
    }

    #[test]
    fn insert_identity_prefix() {
        // not x2 with map (2); inserting x1 at position 0 gives a 2-mode
        // train over {1, 2} for the same function.
        let t = TensorTrain::new(
            2,
            vec![TernaryCore::new(1, 1, vec![1, 0]).unwrap()],
            vec![2],
        )
        .unwrap();
        let t2 = t.insert_identity(0, 1).unwrap();
        assert_eq!(t2.map(), &[1, 2]);
        assert_eq!(brute_values(&t2), vec![1, 0, 1, 0]);
    }

    #[test]
    fn insert_identity_preserves_function() {
        let t = example_or_not();
        let before = brute_values(&t);
        let widened = TensorTrain::new(3, t.cores().to_vec(), t.map().to_vec()).unwrap();
        let t3 = widened.insert_identity(2, 3).unwrap();
        for a in assignments(3) {
            assert_eq!(
                t3.evaluate(&a).unwrap(),
                before[((a[0] as usize) << 1) | a[1] as usize] == 1
            );
        }
    }

    #[test]
    fn insert_identity_doubles_count() {
        // frozen by enumerating all 8 assignments: x1 or not x2 has 3 models
        // over 2 variables, 6 over 3.
        let t = example_or_not();
        let widened = TensorTrain::new(3, t.cores().to_vec(), t.map().to_vec()).unwrap();
        let t3 = widened.insert_identity(2, 3).unwrap();
        let models = assignments(3).filter(|a| t3.evaluate(a).unwrap()).count();
        assert_eq!(models, 6);
    }

    #[test]
    fn insert_identity_rejects_bad_position() {
        let t = example_or_not();
        let widened = TensorTrain::new(3, t.cores().to_vec(), t.map().to_vec()).unwrap();
        assert!(matches!(
            widened.insert_identity(0, 3),
            Err(Error::PositionViolatesOrder { .. })
        ));
        assert!(matches!(
            widened.insert_identity(1, 1),
            Err(Error::PositionViolatesOrder { .. })
        ));
    }

    #[test]
    fn align_disjoint_maps() {
        let x1 = TensorTrain::new(
            2,
            vec![TernaryCore::new(1, 1, vec![0, 1]).unwrap()],
            vec![1],
        )
        .unwrap();
        let not_x2 = TensorTrain::new(
            2,
            vec![TernaryCore::new(1, 1, vec![1, 0]).unwrap()],
            vec![2],
        )
        .unwrap();
        let (a, b) = align(&x1, &not_x2).unwrap();
        assert_eq!(a.map(), &[1, 2]);
        assert_eq!(b.map(), &[1, 2]);
        assert_eq!(brute_values(&a), vec![0, 0, 1, 1]);
        assert_eq!(brute_values(&b), vec![1, 0, 1, 0]);
    }

    #[test]
    fn align_identical_is_structural_noop() {
        let t = example_or_not();
        let (a, b) = align(&t, &t).unwrap();
        assert_eq!(a, t);
        assert_eq!(b, t);
    }

    #[test]
    fn align_rejects_arity_mismatch() {
        let t2 = example_or_not();
        let t3 = TensorTrain::constant(3, true).unwrap();
        assert!(matches!(
            align(&t2, &t3),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn align_preserves_ranks() {
        let t = example_or_not();
        let g = TensorTrain::new(
            2,
            vec![TernaryCore::new(1, 1, vec![1, 0]).unwrap()],
            vec![2],
        )
        .unwrap();
        let (a, b) = align(&t, &g).unwrap();
        assert_eq!(a.rank(), t.rank());
        assert_eq!(b.rank(), g.rank());
    }

    #[test]
    fn sum_is_elementwise_and_ranks_add() {
        let t = example_or_not();
        let s = sum(&t, &t).unwrap();
        // entries of the represented tensor are 0 or 2 at each point
        let doubled: Vec<i64> = brute_values(&t).iter().map(|v| 2 * v).collect();
        assert_eq!(brute_values(&s), doubled);
        // internal bonds add exactly: 2 + 2 = 4
        assert_eq!(s.bond_dims(), vec![1, 4, 1]);
    }

    #[test]
    fn sum_with_zero_train() {
        let t = example_or_not();
        let zero = {
            let z = TernaryCore::new(1, 1, vec![0, 0]).unwrap();
            TensorTrain::new(2, vec![z.clone(), z], vec![1, 2]).unwrap()
        };
        let s = sum(&zero, &t).unwrap();
        assert_eq!(brute_values(&s), brute_values(&t));
    }

    #[test]
    fn sum_single_mode_overflow_is_rejected() {
        let t = TensorTrain::constant(1, true).unwrap();
        assert!(matches!(
            sum(&t, &t),
            Err(Error::TernaryViolation { .. })
        ));
    }

    #[test]
    fn negation_pipeline_gives_complement() {
        // 1 + (-f) as used by the negation transformation
        let t = example_or_not();
        let ones = TensorTrain::ones(2, vec![1, 2]).unwrap();
        let neg = sum(&ones, &t.negate_scalar()).unwrap();
        assert_eq!(brute_values(&neg), vec![0, 1, 0, 0]);
    }

    #[test]
    fn negate_scalar_is_involution_on_values() {
        let t = example_or_not();
        let back = t.negate_scalar().negate_scalar();
        assert_eq!(brute_values(&back), brute_values(&t));
        let all_neg = TensorTrain::ones(2, vec![1, 2]).unwrap().negate_scalar();
        assert_eq!(brute_values(&all_neg), vec![-1, -1, -1, -1]);
    }

    #[test]
    fn hadamard_matches_products_and_ranks_multiply() {
        let x1 = TensorTrain::new(
            2,
            vec![TernaryCore::new(1, 1, vec![0, 1]).unwrap()],
            vec![1],
        )
        .unwrap();
        let not_x2 = TensorTrain::new(
            2,
            vec![TernaryCore::new(1, 1, vec![1, 0]).unwrap()],
            vec![2],
        )
        .unwrap();
        let (a, b) = align(&x1, &not_x2).unwrap();
        let h = hadamard(&a, &b).unwrap();
        // x1 and not x2 has exactly one model, (1, 0)
        assert_eq!(brute_values(&h), vec![0, 0, 1, 0]);
        let expect: Vec<usize> = a
            .bond_dims()
            .iter()
            .zip(b.bond_dims())
            .map(|(x, y)| x * y)
            .collect();
        assert_eq!(h.bond_dims(), expect);
    }

    #[test]
    fn hadamard_with_ones_is_identity() {
        let t = example_or_not();
        let ones = TensorTrain::ones(2, vec![1, 2]).unwrap();
        let h = hadamard(&t, &ones).unwrap();
        assert_eq!(brute_values(&h), brute_values(&t));
    }

    #[test]
    fn hadamard_with_complement_is_zero() {
        let t = example_or_not();
        let ones = TensorTrain::ones(2, vec![1, 2]).unwrap();
        let neg = sum(&ones, &t.negate_scalar()).unwrap();
        let h = hadamard(&t, &neg).unwrap();
        assert_eq!(brute_values(&h), vec![0, 0, 0, 0]);
    }

    #[test]
    fn inner_counts_models_against_ones() {
        let t = example_or_not();
        let ones = TensorTrain::ones(2, vec![1, 2]).unwrap();
        assert_eq!(inner(&t, &ones).unwrap(), BigInt::from(3));
        assert_eq!(inner(&t, &t).unwrap(), BigInt::from(3));
    }

    #[test]
    fn inner_with_zero_train() {
        let z = TernaryCore::new(1, 1, vec![0, 0]).unwrap();
        let zero = TensorTrain::new(2, vec![z.clone(), z], vec![1, 2]).unwrap();
        let t = example_or_not();
        assert_eq!(inner(&zero, &t).unwrap(), BigInt::zero());
    }

    #[test]
    fn inner_requires_alignment() {
        let t = example_or_not();
        let g = TensorTrain::constant(2, true).unwrap();
        assert!(matches!(inner(&t, &g), Err(Error::NotAligned)));
    }

    #[test]
    fn inner_matches_brute_force() {
        let t = example_or_not();
        let ones = TensorTrain::ones(2, vec![1, 2]).unwrap();
        let neg = sum(&ones, &t.negate_scalar()).unwrap();
        for (a, b) in [(&t, &t), (&t, &neg), (&neg, &neg), (&t, &ones)] {
            let brute: i64 = brute_values(a)
                .iter()
                .zip(brute_values(b))
                .map(|(x, y)| x * y)
                .sum();
            assert_eq!(inner(a, b).unwrap(), BigInt::from(brute));
        }
    }

    #[test]
    fn ones_train_counts() {
        let ones = TensorTrain::ones(2, vec![1, 2]).unwrap();
        let all = TensorTrain::ones(2, vec![1, 2]).unwrap();
        assert_eq!(inner(&ones, &all).unwrap(), BigInt::from(4));
        // don't-care factor is applied by the counting layer, not here
        let partial = TensorTrain::ones(3, vec![2]).unwrap();
        assert_eq!(
            inner(&partial, &TensorTrain::ones(3, vec![2]).unwrap()).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn size_lower_bound_rank_plus_modes() {
        for t in [
            example_or_not(),
            TensorTrain::ones(4, vec![1, 2, 3, 4]).unwrap(),
            TensorTrain::constant(5, false).unwrap(),
        ] {
            assert!(t.total_entries() >= t.rank() + t.modes());
        }
    }
}
