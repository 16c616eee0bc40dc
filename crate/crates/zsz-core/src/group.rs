//! Finite groups as dense Cayley tables.
//!
//! A group of order `n` is stored as a row-major `n x n` table of element
//! indices, with the identity pinned at index 0. Everything downstream
//! (matched pairs, centers, central automorphisms) works with these indices,
//! so the representation is deliberately boring: lookups, no cosets of
//! cosets, no symbolic rewriting.

use crate::error::{Error, NotAGroupReason, Result};
use rayon::prelude::*;

/// Element index within a group. Orders stay desk-scale (see
/// [`max_order_guard`]), so 16 bits is plenty and keeps big tables compact.
pub type El = u16;

/// Largest order for which the validator runs the full `O(n^3)`
/// associativity sweep. Above this it falls back to a deterministic sample
/// and the group is marked as only partially validated.
pub const ASSOC_FULL_MAX: usize = 4096;

const DEFAULT_MAX_ORDER: usize = 4000;

/// Working order limit. Defaults to 4000; override with `ZSZ_MAX_ORDER`.
pub fn max_order_guard() -> usize {
    std::env::var("ZSZ_MAX_ORDER")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major multiplication table: `table[a*order + b] = a*b`.
    table: Vec<El>,
    /// Precomputed two-sided inverses.
    inv: Vec<El>,
    /// False when the order was large enough that associativity was only
    /// sampled rather than fully swept.
    fully_validated: bool,
}

impl PartialEq for FiniteGroup {
    /// Name is a label, not part of the group's identity.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}
impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validate a multiplication table (given as rows of indices) and build
    /// the group. The identity is relocated to index 0 if it sits elsewhere.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup {
                reason: NotAGroupReason::BadShape,
                witness: vec![],
            });
        }
        let max = max_order_guard();
        if n > max {
            return Err(Error::GuardExceeded { order: n, max });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup {
                    reason: NotAGroupReason::BadShape,
                    witness: vec![i, row.len()],
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup {
                        reason: NotAGroupReason::BadShape,
                        witness: vec![i, j, v],
                    });
                }
                table.push(v as El);
            }
        }
        Self::from_flat(name, n, table)
    }

    /// As [`from_rows`](Self::from_rows) but takes the flat row-major table.
    pub fn from_flat(name: impl Into<String>, order: usize, mut table: Vec<El>) -> Result<Self> {
        let n = order;
        if table.len() != n * n || table.iter().any(|&v| (v as usize) >= n) {
            return Err(Error::NotAGroup {
                reason: NotAGroupReason::BadShape,
                witness: vec![n, table.len()],
            });
        }

        // Identity first: some e with e*x = x*e = x for all x.
        let identity = (0..n).find(|&e| {
            (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x)
        });
        let e = match identity {
            Some(e) => e,
            None => {
                return Err(Error::NotAGroup {
                    reason: NotAGroupReason::NoIdentity,
                    witness: vec![],
                })
            }
        };
        if e != 0 {
            // Swap labels 0 <-> e so the identity lands at index 0.
            let perm = |x: El| -> El {
                if x as usize == e {
                    0
                } else if x == 0 {
                    e as El
                } else {
                    x
                }
            };
            let old = table;
            table = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    let (pa, pb) = (perm(a as El) as usize, perm(b as El) as usize);
                    table[pa * n + pb] = perm(old[a * n + b]);
                }
            }
        }

        // Latin property: every row and column is a permutation.
        let mut seen = vec![false; n];
        for a in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] {
                    let first = (0..b).find(|&b2| table[a * n + b2] as usize == v).unwrap();
                    return Err(Error::NotAGroup {
                        reason: NotAGroupReason::NotLatin,
                        witness: vec![a, first, b],
                    });
                }
                seen[v] = true;
            }
        }
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let v = table[a * n + b] as usize;
                if seen[v] {
                    let first = (0..a).find(|&a2| table[a2 * n + b] as usize == v).unwrap();
                    return Err(Error::NotAGroup {
                        reason: NotAGroupReason::NotLatin,
                        witness: vec![first, a, b],
                    });
                }
                seen[v] = true;
            }
        }

        // Associativity. Full sweep up to ASSOC_FULL_MAX, sampled beyond.
        let fully_validated = n <= ASSOC_FULL_MAX;
        if let Some(w) = associativity_witness(n, &table, fully_validated) {
            return Err(Error::NotAGroup {
                reason: NotAGroupReason::NotAssociative,
                witness: vec![w.0, w.1, w.2],
            });
        }

        // Two-sided inverses (guaranteed by the above, but checked cheaply).
        let mut inv = vec![0 as El; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a * n + b] == 0 && table[b * n + a] == 0) {
                Some(b) => inv[a] = b as El,
                None => {
                    return Err(Error::NotAGroup {
                        reason: NotAGroupReason::NoInverse,
                        witness: vec![a],
                    })
                }
            }
        }

        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            table,
            inv,
            fully_validated,
        })
    }

    /// Trivial group.
    pub fn trivial() -> Self {
        FiniteGroup {
            name: "1".into(),
            order: 1,
            table: vec![0],
            inv: vec![0],
            fully_validated: true,
        }
    }

    /// Cyclic group of order `n`, element `i` meaning the `i`-th power of the
    /// generator.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic(0) is empty".into()));
        }
        guard_order(n)?;
        let mut table = vec![0 as El; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = ((a + b) % n) as El;
            }
        }
        Ok(known_good(format!("C{n}"), n, table))
    }

    /// Dihedral group of order `2n`: indices `0..n` are rotations `r^i`,
    /// `n..2n` are reflections `s·r^i`, with `s·r^i·s = r^-i`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("dihedral needs n >= 1".into()));
        }
        let ord = 2 * n;
        guard_order(ord)?;
        let mut table = vec![0 as El; ord * ord];
        let idx = |flip: usize, rot: usize| flip * n + rot;
        for f1 in 0..2 {
            for r1 in 0..n {
                for f2 in 0..2 {
                    for r2 in 0..n {
                        // (s^f1 r^r1)(s^f2 r^r2) = s^(f1+f2) r^(r2 + r1 or r2 - r1)
                        let (f, r) = if f2 == 0 {
                            (f1, (r1 + r2) % n)
                        } else {
                            ((f1 + 1) % 2, (n + r2 - r1) % n)
                        };
                        table[idx(f1, r1) * ord + idx(f2, r2)] = idx(f, r) as El;
                    }
                }
            }
        }
        Ok(known_good(format!("D{n}"), ord, table))
    }

    /// Elementary abelian group of order `p^k`; an element is the base-`p`
    /// digit vector of its index, added componentwise.
    pub fn elementary_abelian(p: usize, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("need k >= 1".into()));
        }
        let ord = p.checked_pow(k).filter(|&o| o <= El::MAX as usize + 1);
        let ord = ord.ok_or(Error::InvalidParameter(format!("p^k overflows: {p}^{k}")))?;
        guard_order(ord)?;
        let mut table = vec![0 as El; ord * ord];
        for a in 0..ord {
            for b in 0..ord {
                // Digit-wise addition mod p.
                let (mut x, mut y, mut out, mut place) = (a, b, 0usize, 1usize);
                for _ in 0..k {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                table[a * ord + b] = out as El;
            }
        }
        Ok(known_good(format!("E{p}^{k}"), ord, table))
    }

    /// Direct product, element `(a, b)` at index `a*|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let ord = a.order * b.order;
        guard_order(ord)?;
        let bn = b.order;
        let mut table = vec![0 as El; ord * ord];
        for x1 in 0..a.order {
            for y1 in 0..bn {
                let left = x1 * bn + y1;
                for x2 in 0..a.order {
                    for y2 in 0..bn {
                        let right = x2 * bn + y2;
                        table[left * ord + right] =
                            (a.mul(x1 as El, x2 as El) as usize * bn) as El
                                + b.mul(y1 as El, y2 as El);
                    }
                }
            }
        }
        Ok(known_good(format!("{}x{}", a.name, b.name), ord, table))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[El] {
        &self.table
    }

    /// True unless the order forced a sampled (partial) associativity check.
    pub fn fully_validated(&self) -> bool {
        self.fully_validated
    }

    #[inline]
    pub fn mul(&self, a: El, b: El) -> El {
        debug_assert!((a as usize) < self.order && (b as usize) < self.order);
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: El) -> El {
        self.inv[a as usize]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: El, x: El) -> El {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a^n` for `n >= 0` by repeated multiplication; orders are tiny.
    pub fn pow(&self, a: El, n: usize) -> El {
        let mut acc: El = 0;
        for _ in 0..n {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Multiplicative order of an element.
    pub fn order_of(&self, a: El) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a * n + b] == self.table[b * n + a]))
    }

    /// Exponent: lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order as El).fold(1u64, |acc, a| lcm(acc, self.order_of(a) as u64))
    }

    pub fn elements(&self) -> std::ops::Range<El> {
        0..self.order as El
    }
}

/// Build a group from a table we constructed ourselves and trust; debug
/// builds still re-validate.
fn known_good(name: String, order: usize, table: Vec<El>) -> FiniteGroup {
    let mut inv = vec![0 as El; order];
    for a in 0..order {
        inv[a] = (0..order)
            .find(|&b| table[a * order + b] == 0)
            .expect("known-good table must have inverses") as El;
    }
    let g = FiniteGroup {
        name,
        order,
        table,
        inv,
        fully_validated: order <= ASSOC_FULL_MAX,
    };
    debug_assert!(
        order > ASSOC_FULL_MAX || associativity_witness(order, &g.table, true).is_none(),
        "constructed table is not associative"
    );
    g
}

fn guard_order(order: usize) -> Result<()> {
    let max = max_order_guard();
    if order > max {
        return Err(Error::GuardExceeded { order, max });
    }
    if order > El::MAX as usize + 1 {
        return Err(Error::InvalidParameter(format!(
            "order {order} exceeds the index type"
        )));
    }
    Ok(())
}

/// Least `(a,b,c)` with `(ab)c != a(bc)`, or `None`. With `full = false`
/// only a deterministic stride sample of triples is swept.
fn associativity_witness(n: usize, table: &[El], full: bool) -> Option<(usize, usize, usize)> {
    let check_rows = |rows: &mut dyn Iterator<Item = usize>| -> Option<(usize, usize, usize)> {
        for a in rows {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c] as usize] {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    };
    if full {
        if n <= 64 {
            return check_rows(&mut (0..n));
        }
        // Parallel over the first index; keep the least witness.
        return (0..n)
            .into_par_iter()
            .filter_map(|a| check_rows(&mut std::iter::once(a)))
            .min();
    }
    // Sampled: a fixed prefix plus an even stride across the rest.
    let stride = (n / 64).max(1);
    let picks: Vec<usize> = (0..n.min(16)).chain((0..n).step_by(stride)).collect();
    for &a in &picks {
        for &b in &picks {
            let ab = table[a * n + b] as usize;
            for &c in &picks {
                if table[ab * n + c] != table[a * n + table[b * n + c] as usize] {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

pub(crate) fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
