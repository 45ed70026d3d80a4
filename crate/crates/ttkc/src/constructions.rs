//! Canonical tensor-train builders: literals, terms, clauses, CNF/DNF
//! pipelines, and the hidden-weighted-bit family.

use crate::error::{Error, Result};
use crate::ops::{and_c, or_c, RankGuard};
use crate::tt::{self, TensorTrain, TernaryCore};

/// A literal: 1-based variable index plus polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Literal {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn negative(var: usize) -> Literal {
        Literal {
            var,
            positive: false,
        }
    }

    /// Parses a whitespace-separated list of signed DIMACS-style literals
    /// ("1 -2 3").
    pub fn parse_list(text: &str) -> Result<Vec<Literal>> {
        text.split_whitespace()
            .map(|token| {
                let value: i64 = token
                    .parse()
                    .map_err(|_| Error::BadLiteral(format!("not an integer: {token}")))?;
                if value == 0 {
                    return Err(Error::BadLiteral("literal 0 is reserved".into()));
                }
                Ok(Literal {
                    var: value.unsigned_abs() as usize,
                    positive: value > 0,
                })
            })
            .collect()
    }
}

impl std::fmt::Display for Literal {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.positive {
            write!(out, "-")?;
        }
        write!(out, "{}", self.var)
    }
}

fn validate_literals(literals: &mut Vec<Literal>, allow_empty: bool) -> Result<()> {
    for lit in literals.iter() {
        if lit.var == 0 {
            return Err(Error::BadLiteral("variable index 0".into()));
        }
    }
    literals.sort();
    for pair in literals.windows(2) {
        if pair[0].var == pair[1].var {
            if pair[0].positive != pair[1].positive {
                return Err(Error::InconsistentTerm(pair[0].var));
            }
            return Err(Error::BadLiteral(format!(
                "variable x{} repeated",
                pair[0].var
            )));
        }
    }
    if literals.is_empty() && !allow_empty {
        return Err(Error::EmptyTerm);
    }
    Ok(())
}

/// A conjunction of literals over distinct variables, kept sorted by
/// variable. The empty term is the constant-true function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    literals: Vec<Literal>,
}

impl Term {
    pub fn new(mut literals: Vec<Literal>) -> Result<Term> {
        validate_literals(&mut literals, true)?;
        Ok(Term { literals })
    }

    pub fn empty() -> Term {
        Term {
            literals: Vec::new(),
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }
}

/// A disjunction of literals over distinct variables, kept sorted by
/// variable. The empty clause is the constant-false function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(mut literals: Vec<Literal>) -> Result<Clause> {
        validate_literals(&mut literals, true)?;
        Ok(Clause { literals })
    }

    pub fn empty() -> Clause {
        Clause {
            literals: Vec::new(),
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }
}

fn check_in_range(literals: &[Literal], arity: usize) -> Result<()> {
    for lit in literals {
        if lit.var > arity {
            return Err(Error::BadLiteral(format!(
                "x{} out of range for arity {arity}",
                lit.var
            )));
        }
    }
    Ok(())
}

/// Rank-1 train of a term: one `1 x 2 x 1` core per literal, `(0, 1)` for a
/// positive literal and `(1, 0)` for a negative one.
pub fn term_tt(term: &Term, arity: usize) -> Result<TensorTrain> {
    if term.is_empty() {
        return Err(Error::EmptyTerm);
    }
    check_in_range(term.literals(), arity)?;
    let mut cores = Vec::with_capacity(term.len());
    let mut map = Vec::with_capacity(term.len());
    for lit in term.literals() {
        let entries = if lit.positive { vec![0, 1] } else { vec![1, 0] };
        cores.push(TernaryCore::new(1, 1, entries)?);
        map.push(lit.var);
    }
    TensorTrain::new(arity, cores, map)
}

/// Rank-2 train of a clause, built by De Morgan as `1 - (term of negated
/// literals)`.
pub fn clause_tt(clause: &Clause, arity: usize) -> Result<TensorTrain> {
    if clause.is_empty() {
        return Err(Error::EmptyClause);
    }
    let negated = Term::new(
        clause
            .literals()
            .iter()
            .map(|l| Literal {
                var: l.var,
                positive: !l.positive,
            })
            .collect(),
    )?;
    let term = term_tt(&negated, arity)?;
    let ones = TensorTrain::ones(arity, term.map().to_vec())?;
    tt::sum(&ones, &term.negate_scalar())
}

/// Exact train of a CNF: clause trains folded with the guarded conjunction.
/// The empty conjunction is constant true. A guard abort carries the index
/// of the offending clause.
pub fn cnf_tt(clauses: &[Clause], arity: usize, guard: RankGuard) -> Result<TensorTrain> {
    if clauses.is_empty() {
        return TensorTrain::constant(arity.max(1), true);
    }
    let trains = clauses
        .iter()
        .map(|c| clause_tt(c, arity))
        .collect::<Result<Vec<_>>>()?;
    and_c(&trains, guard)
}

/// Exact train of a DNF: term trains folded with the guarded disjunction.
/// The empty disjunction is constant false.
pub fn dnf_tt(terms: &[Term], arity: usize, guard: RankGuard) -> Result<TensorTrain> {
    if terms.is_empty() {
        return TensorTrain::constant(arity.max(1), false);
    }
    let trains = terms
        .iter()
        .map(|t| term_tt(t, arity))
        .collect::<Result<Vec<_>>>()?;
    or_c(&trains, guard)
}

/// The hidden-weighted-bit function: outputs the k-th input bit where k is
/// the number of 1s in the input (0 on the all-zero input). Exponential for
/// reduced ordered decision diagrams, rank `2n` as a tensor train.
pub fn hwb(bits: &[bool]) -> bool {
    let k = bits.iter().filter(|&&b| b).count();
    k > 0 && bits[k - 1]
}

/// Tensor train for the hidden-weighted-bit function over `n` variables with
/// the identity mapping.
///
/// Each inner core is `2n x 2 x 2n`. The sweep state is a `2n`-vector whose
/// first half one-hot encodes the running popcount (mod n) and whose second
/// half stores the input bits, rotated so that entry `n` always holds the
/// bit selected by the popcount so far. The 0-slice is the identity; the
/// 1-slice advances the popcount (cyclic shift by 1), rotates the stored
/// bits, and files the freshly read 1 where the rotation scheme expects it.
/// Boundary vectors (read-in at position 0, read-out at position n) are
/// absorbed into the first and last cores.
pub fn hwb_tt(n: usize) -> TensorTrain {
    assert!(n >= 1, "hwb_tt needs at least one variable");
    let width = 2 * n;
    // one_slice(i, l, r): entry of A_i(., 1, .) for 1-based core index i
    let one_slice = |i: usize, l: usize, r: usize| -> i8 {
        if l < n && r < n {
            // popcount half: cyclic right shift by 1
            (r == (l + 1) % n) as i8
        } else if l < n && r >= n {
            // file the new bit: row flip of the shifted identity, placing
            // bit i at the slot the rotated storage reads it from
            ((l + (r - n)) % n == (i - 1) % n) as i8
        } else if l >= n && r >= n {
            // stored bits rotate one step left
            ((r - n) == (l - n + n - 1) % n) as i8
        } else {
            0
        }
    };
    let zero_slice = |l: usize, r: usize| -> i8 { (l == r) as i8 };
    let slice = |i: usize, mode: usize, l: usize, r: usize| -> i8 {
        if mode == 0 {
            zero_slice(l, r)
        } else {
            one_slice(i, l, r)
        }
    };
    // boundary vectors: read-in selects row 0, read-out selects column n
    let mut cores = Vec::with_capacity(n);
    for i in 1..=n {
        let left = if i == 1 { 1 } else { width };
        let right = if i == n { 1 } else { width };
        let core = TernaryCore::from_fn(left, right, |l, mode, r| {
            let row = if i == 1 { 0 } else { l };
            let col = if i == n { n } else { r };
            slice(i, mode, row, col)
        })
        .expect("hwb core entries are 0/1");
        cores.push(core);
    }
    TensorTrain::new(n, cores, (1..=n).collect()).expect("hwb train is well formed")
}

/// The 2n-clause CNF forcing `x_i = y_i` for all i, over arity `2n` with
/// `y_i = x_{n+i}`: clauses `(x_i | -y_i)` and `(-x_i | y_i)`. Its train
/// rank at the x/y split is forced to `2^n`, which is what makes unbounded
/// conjunction blow up.
pub fn equality_cnf(n: usize) -> Vec<Clause> {
    let mut clauses = Vec::with_capacity(2 * n);
    for i in 1..=n {
        clauses.push(
            Clause::new(vec![Literal::positive(i), Literal::negative(n + i)]).unwrap(),
        );
        clauses.push(
            Clause::new(vec![Literal::negative(i), Literal::positive(n + i)]).unwrap(),
        );
    }
    clauses
}
