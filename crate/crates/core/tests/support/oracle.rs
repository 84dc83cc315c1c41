//! Brute-force reference evaluator, written against the operator definitions
//! directly and sharing no code with the library.
//!
//! Processes are dense vectors of `(delta, gamma)` fraction pairs; regions are
//! recomputed as crisp sets for every label.

#![allow(dead_code)]

use std::cmp::Ordering;

/// Unreduced fraction `n/d` compared by cross-multiplication.
#[derive(Clone, Copy, Debug)]
pub struct Frac(pub u64, pub u64);

impl Frac {
    pub const ZERO: Frac = Frac(0, 1);
    pub const ONE: Frac = Frac(1, 1);

    pub fn parse(s: &str) -> Frac {
        match s.split_once('/') {
            Some((n, d)) => Frac(n.parse().unwrap(), d.parse().unwrap()),
            None => Frac(s.parse().unwrap(), 1),
        }
    }

    pub fn pos(self) -> bool {
        self.0 > 0
    }

    fn key(self, other: Frac) -> (u128, u128) {
        (self.0 as u128 * other.1 as u128, other.0 as u128 * self.1 as u128)
    }

    pub fn min(self, o: Frac) -> Frac {
        if self <= o {
            self
        } else {
            o
        }
    }

    pub fn max(self, o: Frac) -> Frac {
        if self >= o {
            self
        } else {
            o
        }
    }

    /// `"n/d"` in lowest terms, `"0"` and `"1"` for the integers.
    pub fn reduced(self) -> String {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(self.0, self.1).max(1);
        let (n, d) = (self.0 / g, self.1 / g);
        if d == 1 {
            format!("{n}")
        } else {
            format!("{n}/{d}")
        }
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Frac) -> bool {
        let (a, b) = self.key(*o);
        a == b
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Frac) -> Option<Ordering> {
        let (a, b) = self.key(*o);
        Some(a.cmp(&b))
    }
}

/// One `(delta, gamma)` pair per label.
pub type Proc = Vec<(Frac, Frac)>;

fn in_x(p: &Proc, i: usize) -> bool {
    p[i].0.pos()
}
fn in_y(p: &Proc, i: usize) -> bool {
    p[i].1.pos()
}
/// Escapes: delta = 0, gamma > 0.
fn in_xt(p: &Proc, i: usize) -> bool {
    !p[i].0.pos() && p[i].1.pos()
}
/// Rejects: gamma = 0, delta > 0.
fn in_yt(p: &Proc, i: usize) -> bool {
    !p[i].1.pos() && p[i].0.pos()
}

pub fn product(p: &Proc, q: &Proc) -> Proc {
    (0..p.len())
        .map(|i| {
            let d = if in_x(p, i) && in_x(q, i) {
                p[i].0.min(q[i].0)
            } else {
                Frac::ZERO
            };
            let g = if in_y(p, i) && in_y(q, i) {
                p[i].1.min(q[i].1)
            } else if in_xt(p, i) && in_yt(q, i) {
                p[i].1.min(q[i].0)
            } else if in_yt(p, i) && in_xt(q, i) {
                q[i].1.min(p[i].0)
            } else {
                Frac::ZERO
            };
            (d, g)
        })
        .collect()
}

pub fn sum(p: &Proc, q: &Proc) -> Proc {
    (0..p.len())
        .map(|i| {
            let d = if in_x(p, i) && in_x(q, i) {
                p[i].0.min(q[i].0)
            } else if in_xt(p, i) && in_yt(q, i) {
                p[i].1.min(q[i].0)
            } else if in_yt(p, i) && in_xt(q, i) {
                q[i].1.min(p[i].0)
            } else {
                Frac::ZERO
            };
            let g = if in_y(p, i) && in_y(q, i) {
                p[i].1.min(q[i].1)
            } else {
                Frac::ZERO
            };
            (d, g)
        })
        .collect()
}

pub fn meet(p: &Proc, q: &Proc) -> Proc {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a.0.max(b.0), a.1.min(b.1)))
        .collect()
}

pub fn join(p: &Proc, q: &Proc) -> Proc {
    p.iter()
        .zip(q)
        .map(|(a, b)| (a.0.min(b.0), a.1.max(b.1)))
        .collect()
}

pub fn reflect(p: &Proc) -> Proc {
    p.iter().map(|&(d, g)| (g, d)).collect()
}

pub fn konst(n: usize, d: Frac, g: Frac) -> Proc {
    vec![(d, g); n]
}
pub fn omega(n: usize) -> Proc {
    konst(n, Frac::ONE, Frac::ONE)
}
pub fn top(n: usize) -> Proc {
    konst(n, Frac::ZERO, Frac::ONE)
}
pub fn bottom(n: usize) -> Proc {
    konst(n, Frac::ONE, Frac::ZERO)
}

pub fn refines(p: &Proc, q: &Proc) -> bool {
    p.iter().zip(q).all(|(a, b)| a.0 >= b.0 && a.1 <= b.1)
}

pub fn eq_value(p: &Proc, q: &Proc) -> bool {
    p.iter().zip(q).all(|(a, b)| a.0 == b.0 && a.1 == b.1)
}

pub fn eq_support(p: &Proc, q: &Proc) -> bool {
    p.iter()
        .zip(q)
        .all(|(a, b)| a.0.pos() == b.0.pos() && a.1.pos() == b.1.pos())
}

pub fn blocking_free(p: &Proc) -> bool {
    p.iter().all(|(d, g)| d.pos() || g.pos())
}

pub fn robust(p: &Proc) -> bool {
    p.iter().all(|(_, g)| *g == Frac::ONE)
}

pub fn chaotic(p: &Proc) -> bool {
    p.iter().all(|(d, _)| *d == Frac::ONE)
}

/// All blocking-free processes over `n` labels, first label most significant,
/// per-label pairs ordered by (delta index, gamma index).
pub fn enumerate(n: usize, grid: &[Frac]) -> Vec<Proc> {
    let pairs: Vec<(Frac, Frac)> = grid
        .iter()
        .flat_map(|&d| grid.iter().map(move |&g| (d, g)))
        .filter(|(d, g)| d.pos() || g.pos())
        .collect();
    let mut out: Vec<Proc> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pairs.iter().map(move |&pair| {
                    let mut next = prefix.clone();
                    next.push(pair);
                    next
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Verified(u64),
    /// Indices into the enumeration of the first failing tuple.
    Counterexample(Vec<usize>),
}

/// `None` for laws without an equality notion.
pub fn law_modes(law: &str) -> Vec<Option<bool>> {
    if law.starts_with("ORDER") || law.starts_with("LATTICE") || law.starts_with("CLOSURE") || law == "P2.ii" || law == "P2.iii" {
        vec![None]
    } else {
        vec![Some(true), Some(false)]
    }
}

pub const LAWS: &[&str] = &[
    "P1.i", "P1.ii", "P1.iii", "P1.iv", "P1.i'", "P1.ii'", "P1.iii'", "P1.iv'",
    "P2.i", "P2.ii", "P2.iii",
    "P3.i", "P3.ii", "P3.iii", "P3.iv", "P3.i'", "P3.ii'", "P3.iii'",
    "P4.i", "P4.ii", "P4.iii", "P4.iv",
    "ORDER.reflexive", "ORDER.transitive", "ORDER.antisymmetric", "ORDER.bounds",
    "LATTICE.glb", "LATTICE.lub", "CLOSURE.blocking_free",
];

pub fn arity(law: &str) -> usize {
    match law {
        "P1.ii" | "P1.ii'" | "ORDER.transitive" | "LATTICE.glb" | "LATTICE.lub" => 3,
        "P1.iii" | "P1.iii'" | "P2.ii" | "P4.i" | "P4.ii" | "P4.iii" | "P4.iv"
        | "ORDER.antisymmetric" | "CLOSURE.blocking_free" => 2,
        _ => 1,
    }
}

/// Does the law hold on this tuple? `value` selects value-level equality.
pub fn holds(law: &str, value: Option<bool>, t: &[&Proc]) -> bool {
    let eq = |a: &Proc, b: &Proc| {
        if value.unwrap_or(true) {
            eq_value(a, b)
        } else {
            eq_support(a, b)
        }
    };
    let n = t[0].len();
    let p = t[0];
    match law {
        "P1.i" => eq(&product(p, p), p),
        "P1.ii" => eq(&product(p, &product(t[1], t[2])), &product(&product(p, t[1]), t[2])),
        "P1.iii" => eq(&product(p, t[1]), &product(t[1], p)),
        "P1.iv" => eq(&product(p, &omega(n)), p),
        "P1.i'" => eq(&sum(p, p), p),
        "P1.ii'" => eq(&sum(p, &sum(t[1], t[2])), &sum(&sum(p, t[1]), t[2])),
        "P1.iii'" => eq(&sum(p, t[1]), &sum(t[1], p)),
        "P1.iv'" => eq(&sum(p, &omega(n)), p),
        "P2.i" => eq(&reflect(&reflect(p)), p),
        "P2.ii" => refines(p, t[1]) == refines(&reflect(t[1]), &reflect(p)),
        "P2.iii" => robust(p) == chaotic(&reflect(p)),
        "P3.i" => eq(&meet(p, &top(n)), p),
        "P3.ii" => eq(&join(p, &top(n)), &top(n)),
        "P3.iii" => eq(&product(p, &top(n)), &top(n)),
        "P3.iv" => eq(&reflect(&top(n)), &bottom(n)),
        "P3.i'" => eq(&join(p, &bottom(n)), p),
        "P3.ii'" => eq(&meet(p, &bottom(n)), &bottom(n)),
        "P3.iii'" => eq(&sum(p, &bottom(n)), &bottom(n)),
        "P4.i" => eq(&reflect(&product(p, t[1])), &sum(&reflect(p), &reflect(t[1]))),
        "P4.ii" => eq(&reflect(&sum(p, t[1])), &product(&reflect(p), &reflect(t[1]))),
        "P4.iii" => eq(&reflect(&meet(p, t[1])), &join(&reflect(p), &reflect(t[1]))),
        "P4.iv" => eq(&reflect(&join(p, t[1])), &meet(&reflect(p), &reflect(t[1]))),
        "ORDER.reflexive" => refines(p, p),
        "ORDER.transitive" => !(refines(p, t[1]) && refines(t[1], t[2])) || refines(p, t[2]),
        "ORDER.antisymmetric" => !(refines(p, t[1]) && refines(t[1], p)) || eq_value(p, t[1]),
        "ORDER.bounds" => refines(&bottom(n), p) && refines(p, &top(n)),
        "LATTICE.glb" => {
            let m = meet(p, t[1]);
            refines(&m, p) && refines(&m, t[1]) && (!(refines(t[2], p) && refines(t[2], t[1])) || refines(t[2], &m))
        }
        "LATTICE.lub" => {
            let j = join(p, t[1]);
            refines(p, &j) && refines(t[1], &j) && (!(refines(p, t[2]) && refines(t[1], t[2])) || refines(&j, t[2]))
        }
        "CLOSURE.blocking_free" => {
            let q = t[1];
            [product(p, q), sum(p, q), meet(p, q), join(p, q), reflect(p)]
                .iter()
                .all(blocking_free)
        }
        other => panic!("oracle has no law {other}"),
    }
}

/// Exhaustive check over all tuples in lexicographic index order.
pub fn check(law: &str, value: Option<bool>, space: &[Proc]) -> OracleVerdict {
    let k = arity(law);
    let n = space.len();
    let total = n.pow(k as u32);
    for idx in 0..total {
        let mut digits = vec![0; k];
        let mut rest = idx;
        for slot in (0..k).rev() {
            digits[slot] = rest % n;
            rest /= n;
        }
        let tuple: Vec<&Proc> = digits.iter().map(|&d| &space[d]).collect();
        if !holds(law, value, &tuple) {
            return OracleVerdict::Counterexample(digits);
        }
    }
    OracleVerdict::Verified(total as u64)
}
