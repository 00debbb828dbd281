//! Exact feasibility of mixed strict/non-strict linear systems.
//!
//! Equalities are substituted away by integer Gaussian elimination, then the
//! remaining inequalities go through Fourier–Motzkin elimination with a
//! strictness bit per row. All arithmetic is on arbitrary-precision integers;
//! every row is kept primitive (gcd 1).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `= 0`
    Eq,
    /// `> 0`
    Gt,
    /// `>= 0`
    Ge,
}

/// `coeffs · y + constant  (relation)  0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<BigInt>,
    pub constant: BigInt,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigInt>, constant: BigInt, relation: Relation) -> Constraint {
        Constraint {
            coeffs,
            constant,
            relation,
        }
    }

    pub fn homogeneous(coeffs: Vec<BigInt>, relation: Relation) -> Constraint {
        Constraint::new(coeffs, BigInt::zero(), relation)
    }

    pub fn negated(mut self) -> Constraint {
        for c in &mut self.coeffs {
            *c = -&*c;
        }
        self.constant = -self.constant;
        self
    }

    fn normalize(&mut self) {
        let g = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .fold(BigInt::zero(), |g, c| g.gcd(c));
        if !g.is_zero() && g != BigInt::from(1) {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.constant /= &g;
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Truth value of a constraint without variables.
    fn holds_trivially(&self) -> bool {
        match self.relation {
            Relation::Eq => self.constant.is_zero(),
            Relation::Gt => self.constant.is_positive(),
            Relation::Ge => !self.constant.is_negative(),
        }
    }
}

/// Decide whether some real `y` satisfies every constraint.
pub fn feasible(nvars: usize, constraints: &[Constraint]) -> bool {
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for c in constraints {
        debug_assert_eq!(c.coeffs.len(), nvars);
        let mut c = c.clone();
        c.normalize();
        if c.is_trivial() {
            if !c.holds_trivially() {
                return false;
            }
            continue;
        }
        if c.relation == Relation::Eq {
            eqs.push(c);
        } else {
            ineqs.push(c);
        }
    }

    // substitution
    while let Some(eq) = eqs.pop() {
        let k = eq
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nontrivial equality");
        let pivot = eq.coeffs[k].clone();
        let scale = pivot.abs();
        let sign = if pivot.is_positive() { 1 } else { -1 };
        let eliminate = |row: &mut Constraint| {
            let f = &row.coeffs[k];
            if f.is_zero() {
                return;
            }
            let f = f * sign;
            for (a, e) in row.coeffs.iter_mut().zip(&eq.coeffs) {
                *a = &*a * &scale - &f * e;
            }
            row.constant = &row.constant * &scale - &f * &eq.constant;
        };
        let mut next_eqs = Vec::with_capacity(eqs.len());
        for mut r in eqs.drain(..) {
            eliminate(&mut r);
            r.normalize();
            if r.is_trivial() {
                if !r.holds_trivially() {
                    return false;
                }
            } else {
                next_eqs.push(r);
            }
        }
        eqs = next_eqs;
        let mut next = Vec::with_capacity(ineqs.len());
        for mut r in ineqs.drain(..) {
            eliminate(&mut r);
            r.normalize();
            if r.is_trivial() {
                if !r.holds_trivially() {
                    return false;
                }
            } else {
                next.push(r);
            }
        }
        ineqs = next;
    }

    let mut rows = dedup(ineqs);
    loop {
        if rows.is_empty() {
            return true;
        }
        // variable with the smallest product of positive and negative occurrences
        let mut best: Option<(usize, usize)> = None;
        for k in 0..nvars {
            let pos = rows.iter().filter(|r| r.coeffs[k].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[k].is_negative()).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some((k, cost));
            }
        }
        let Some((k, _)) = best else {
            return true;
        };
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coeffs[k].is_positive() {
                pos.push(r);
            } else if r.coeffs[k].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p.coeffs[k].clone();
                let b = -n.coeffs[k].clone();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(x, y)| x * &b + y * &a)
                    .collect();
                let constant = &p.constant * &b + &n.constant * &a;
                let relation = if p.relation == Relation::Gt || n.relation == Relation::Gt {
                    Relation::Gt
                } else {
                    Relation::Ge
                };
                let mut c = Constraint::new(coeffs, constant, relation);
                c.normalize();
                if c.is_trivial() {
                    if !c.holds_trivially() {
                        return false;
                    }
                } else {
                    rest.push(c);
                }
            }
        }
        rows = dedup(rest);
    }
}

/// Keep the tightest row per coefficient vector.
fn dedup(rows: Vec<Constraint>) -> Vec<Constraint> {
    let mut best: HashMap<Vec<BigInt>, (BigInt, Relation)> = HashMap::new();
    let mut order = Vec::new();
    for r in rows {
        match best.get_mut(&r.coeffs) {
            None => {
                order.push(r.coeffs.clone());
                best.insert(r.coeffs, (r.constant, r.relation));
            }
            Some((k, rel)) => {
                // c·y + k ≥ 0: smaller k is tighter; at equal k strict wins
                if r.constant < *k {
                    *k = r.constant;
                    *rel = r.relation;
                } else if r.constant == *k && r.relation == Relation::Gt {
                    *rel = Relation::Gt;
                }
            }
        }
    }
    order
        .into_iter()
        .map(|coeffs| {
            let (constant, relation) = best.remove(&coeffs).expect("present");
            Constraint::new(coeffs, constant, relation)
        })
        .collect()
}
