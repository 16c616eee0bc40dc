//! A worked family of products of order `p^5`, one for each odd prime.
//!
//! Take `H` elementary abelian of order `p^3` with generators `a`, `b`,
//! `d` (element `a^i b^j d^l` at index `i p^2 + j p + l`) and `K`
//! elementary abelian of order `p^2` with generators `c`, `e` (element
//! `c^k e^m` at index `k p + m`). Two shear rules,
//!
//! ```text
//! sigma_e(b) = b d^-1        tau_a(e) = e c^-1
//! ```
//!
//! with every other generator pair acting trivially, saturate to the
//! closed-form actions
//!
//! ```text
//! sigma_{c^k e^m}(a^i b^j d^l) = a^i b^j d^(l - jm)
//! tau_{a^i b^j d^l}(c^k e^m)   = c^(k - im) e^m
//! ```
//!
//! and the product is the order-`p^5` group generated by `a, b, c, d, e`
//! subject to `ae = eac`, `be = ebd`, all generators of order `p`, and
//! every other generator pair commuting. The family is small enough to
//! compute everything about yet rich enough that both actions, all four
//! distinguished map subgroups, and the full matrix group are
//! nontrivial, so it doubles as an end-to-end exercise of the crate:
//! every structural fact listed in [`P5Instance::verify_all`] is
//! computed from scratch and compared against the closed-form
//! prediction.
//!
//! `build` refuses even or composite `p`; the product-order guard (see
//! the crate-level `ZSZ_MAX_ORDER`) refuses `p >= 7` unless raised,
//! since `7^5 = 16807`.

use crate::central_aut::{
    compose_matrices, enumerate_ac, map_algebra, verify_abcd_product, CentralAutMatrix,
};
use crate::center::center_via_theorem;
use crate::error::{Error, Result};
use crate::gen_actions::{extend_generator_actions, GeneratorActionRules};
use crate::group::{is_prime, El, FiniteGroup};
use crate::matched_pair::{MatchedPair, ZappaSzepGroup};
use crate::subgroup::{center_bruteforce, structure_probe, Subgroup};
use serde::Serialize;

/// One named expectation, stored as an expected/actual string pair so
/// reports stay readable and serializable; `pass` is string equality.
#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// A batch of [`Claim`]s; the checkers below never stop at the first
/// failure, so a report always covers everything it set out to verify.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ClaimReport {
    pub claims: Vec<Claim>,
}

impl ClaimReport {
    fn claim(&mut self, name: impl Into<String>, expected: impl ToString, actual: impl ToString) {
        let expected = expected.to_string();
        let actual = actual.to_string();
        self.claims.push(Claim {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        });
    }

    /// Claim that a computed member list equals the predicted one.
    fn set_claim(&mut self, name: impl Into<String>, got: &[El], want: &[El]) {
        let actual = if got == want {
            format!("the predicted set of order {}", want.len())
        } else {
            format!("a different set of order {}", got.len())
        };
        self.claim(name, format!("the predicted set of order {}", want.len()), actual);
    }

    pub fn merge(mut self, other: ClaimReport) -> ClaimReport {
        self.claims.extend(other.claims);
        self
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.claims
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn to_result(&self) -> Result<()> {
        if self.all_pass() {
            Ok(())
        } else {
            Err(Error::ClaimFailed(self.failed().join("; ")))
        }
    }
}

/// The order-`p^5` family member for one odd prime.
pub struct P5Instance {
    p: usize,
    mp: MatchedPair,
    zs: ZappaSzepGroup,
}

impl P5Instance {
    pub fn build(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p as usize) {
            return Err(Error::NotOddPrime(p));
        }
        let p = p as usize;
        let h = FiniteGroup::elementary_abelian(p, 3)?;
        let k = FiniteGroup::elementary_abelian(p, 2)?;
        let (a, b, d) = ((p * p) as El, p as El, 1 as El);
        let (c, e) = (p as El, 1 as El);
        let rules = GeneratorActionRules::new(vec![a, b, d], vec![c, e])
            .sigma_rule(e, b, (p + (p - 1)) as El)
            .tau_rule(a, e, ((p - 1) * p + 1) as El);
        let mp = extend_generator_actions(&h, &k, &rules)?;
        let zs = mp.build_product()?;
        Ok(P5Instance { p, mp, zs })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn mp(&self) -> &MatchedPair {
        &self.mp
    }

    pub fn zs(&self) -> &ZappaSzepGroup {
        &self.zs
    }

    pub fn product(&self) -> &FiniteGroup {
        self.zs.product()
    }

    /// Indices of `a`, `b`, `d` in `H`.
    pub fn h_gens(&self) -> (El, El, El) {
        ((self.p * self.p) as El, self.p as El, 1)
    }

    /// Indices of `c`, `e` in `K`.
    pub fn k_gens(&self) -> (El, El) {
        (self.p as El, 1)
    }

    /// The saturated tables against the closed form, the compatibility
    /// conditions, the fixed and kernel subgroups of both actions, and
    /// the product's presentation (orders, relations, embedding
    /// layout).
    pub fn verify_build(&self) -> ClaimReport {
        let mut rep = ClaimReport::default();
        let p = self.p;
        let (h, k) = (self.mp.h(), self.mp.k());
        let g = self.zs.product();

        // Closed form, every cell of both tables.
        let mut first_bad = None;
        'scan: for kk in 0..k.order() {
            let (k1, m) = (kk / p, kk % p);
            for hh in 0..h.order() {
                let (i, rest) = (hh / (p * p), hh % (p * p));
                let (j, l) = (rest / p, rest % p);
                let want_sigma = i * p * p + j * p + (l + p - (j * m) % p) % p;
                let want_tau = ((k1 + p - (i * m) % p) % p) * p + m;
                if self.mp.sigma(kk as El, hh as El) as usize != want_sigma
                    || self.mp.tau(hh as El, kk as El) as usize != want_tau
                {
                    first_bad = Some((kk, hh));
                    break 'scan;
                }
            }
        }
        rep.claim(
            "saturated tables match the closed-form actions",
            "every cell",
            match first_bad {
                None => "every cell".into(),
                Some((kk, hh)) => format!("mismatch at (k={kk}, h={hh})"),
            },
        );
        rep.claim(
            "pair satisfies the compatibility conditions",
            true,
            self.mp.is_valid(),
        );
        rep.claim("product order", p.pow(5), g.order());

        // Embedded generators and their relations.
        let (a, b, d) = self.h_gens();
        let (c, e) = self.k_gens();
        let ga = self.zs.embed_h(a);
        let gb = self.zs.embed_h(b);
        let gd = self.zs.embed_h(d);
        let gc = self.zs.embed_k(c);
        let ge = self.zs.embed_k(e);
        rep.claim(
            "embedded generator indices (a, b, d, c, e)",
            format!("{}, {}, {}, {}, {}", p.pow(4), p.pow(3), p.pow(2), p, 1),
            format!("{ga}, {gb}, {gd}, {gc}, {ge}"),
        );
        let orders: Vec<usize> = [ga, gb, gd, gc, ge].iter().map(|&x| g.order_of(x)).collect();
        rep.claim("generator orders", format!("{:?}", [p; 5]), format!("{orders:?}"));
        rep.claim(
            "relation a e = e a c",
            "holds",
            if g.mul(ga, ge) == g.mul(g.mul(ge, ga), gc) {
                "holds"
            } else {
                "fails"
            },
        );
        rep.claim(
            "relation b e = e b d",
            "holds",
            if g.mul(gb, ge) == g.mul(g.mul(ge, gb), gd) {
                "holds"
            } else {
                "fails"
            },
        );
        let commuting_pairs: [(&str, El, El); 8] = [
            ("a b", ga, gb),
            ("a c", ga, gc),
            ("a d", ga, gd),
            ("b c", gb, gc),
            ("b d", gb, gd),
            ("c d", gc, gd),
            ("c e", gc, ge),
            ("d e", gd, ge),
        ];
        let bad: Vec<&str> = commuting_pairs
            .iter()
            .filter(|&&(_, x, y)| g.mul(x, y) != g.mul(y, x))
            .map(|&(n, _, _)| n)
            .collect();
        rep.claim(
            "all other generator pairs commute",
            "no exceptions",
            if bad.is_empty() {
                "no exceptions".into()
            } else {
                format!("non-commuting: {bad:?}")
            },
        );

        // Fixed and kernel subgroups of the two actions.
        let grid = |pred: &dyn Fn(usize, usize, usize) -> bool| -> Vec<El> {
            (0..h.order())
                .filter(|&x| pred(x / (p * p), (x % (p * p)) / p, x % p))
                .map(|x| x as El)
                .collect()
        };
        let kset = |pred: &dyn Fn(usize, usize) -> bool| -> Vec<El> {
            (0..k.order())
                .filter(|&x| pred(x / p, x % p))
                .map(|x| x as El)
                .collect()
        };
        rep.set_claim(
            "Fix(sigma) = <a, d>",
            self.mp.fix_sigma().members(),
            &grid(&|_, j, _| j == 0),
        );
        rep.set_claim(
            "ker(tau) = <b, d>",
            self.mp.ker_tau().members(),
            &grid(&|i, _, _| i == 0),
        );
        rep.set_claim(
            "Fix(tau) = <c>",
            self.mp.fix_tau().members(),
            &kset(&|_, m| m == 0),
        );
        rep.set_claim(
            "ker(sigma) = <c>",
            self.mp.ker_sigma().members(),
            &kset(&|_, m| m == 0),
        );
        rep.set_claim("H* = <d>", self.mp.h_star().members(), &grid(&|i, j, _| i == 0 && j == 0));
        rep.set_claim("K* = <c>", self.mp.k_star().members(), &kset(&|_, m| m == 0));
        rep
    }

    /// The center, by the fixed-point characterization and by brute
    /// force, against the prediction `Z = <c, d>` of order `p^2`.
    pub fn verify_center(&self) -> ClaimReport {
        let mut rep = ClaimReport::default();
        let p = self.p;
        let g = self.zs.product();
        let thm = center_via_theorem(&self.zs);
        let brute = center_bruteforce(g);
        rep.claim(
            "fixed-point center equals brute-force center",
            "equal",
            if thm.members() == brute.members() {
                "equal"
            } else {
                "different"
            },
        );
        rep.claim("center order", p * p, thm.order());
        // Z = { d^l c^k } at pair index l * p^2 + k * p.
        let mut want: Vec<El> = (0..p)
            .flat_map(|l| (0..p).map(move |k1| (l * p * p + k1 * p) as El))
            .collect();
        want.sort_unstable();
        rep.set_claim("center members are the d^l c^k", thm.members(), &want);
        let gen = Subgroup::generated(g, &[self.zs.embed_h(1), self.zs.embed_k(self.p as El)]);
        rep.claim(
            "center is generated by embedded d and c",
            "generates",
            if gen.members() == thm.members() {
                "generates"
            } else {
                "does not generate"
            },
        );
        rep
    }

    /// The four map subgroups: orders `(p^2, p, p^2, p)`, the pinned
    /// images forced by the actions, elementary abelian structure, and
    /// the absorption/annihilation laws between them.
    pub fn verify_pqrs(&self) -> ClaimReport {
        let mut rep = ClaimReport::default();
        let p = self.p;
        let (h, k) = (self.mp.h(), self.mp.k());
        let pqrs = match crate::central_aut::compute_pqrs(&self.mp) {
            Ok(v) => v,
            Err(e) => {
                rep.claim("P, Q, R, S computable", "yes", format!("no: {e}"));
                return rep;
            }
        };
        rep.claim("|P|", p * p, pqrs.p.len());
        rep.claim("|Q|", p, pqrs.q.len());
        rep.claim("|R|", p * p, pqrs.r.len());
        rep.claim("|S|", p, pqrs.s.len());

        let (_, _, d) = self.h_gens();
        let (c, _) = self.k_gens();
        rep.claim(
            "alpha(d) = d for every alpha in P",
            0,
            pqrs.p.iter().filter(|f| f.apply(d) != d).count(),
        );
        rep.claim(
            "beta(c) = 1 for every beta in Q",
            0,
            pqrs.q.iter().filter(|f| f.apply(c) != 0).count(),
        );
        rep.claim(
            "gamma(d) = 1 for every gamma in R",
            0,
            pqrs.r.iter().filter(|f| f.apply(d) != 0).count(),
        );
        rep.claim(
            "delta(c) = c for every delta in S",
            0,
            pqrs.s.iter().filter(|f| f.apply(c) != c).count(),
        );

        // Elementary abelian structure: commuting and exponent p, under
        // composition for P and S, the pointwise product for Q and R.
        let pow_compose = |img: &[El], n: usize| -> Vec<El> {
            let mut acc: Vec<El> = (0..img.len() as El).collect();
            for _ in 0..n {
                acc = map_algebra::compose(img, &acc).unwrap();
            }
            acc
        };
        let id_h: Vec<El> = h.elements().collect();
        let id_k: Vec<El> = k.elements().collect();
        rep.claim(
            "P elementary abelian of exponent p",
            0,
            pqrs.p
                .iter()
                .filter(|f| pow_compose(f.image(), p) != id_h)
                .count()
                + pqrs
                    .p
                    .iter()
                    .flat_map(|f| pqrs.p.iter().map(move |g2| (f, g2)))
                    .filter(|(f, g2)| {
                        map_algebra::compose(f.image(), g2.image()).unwrap()
                            != map_algebra::compose(g2.image(), f.image()).unwrap()
                    })
                    .count(),
        );
        rep.claim(
            "S elementary abelian of exponent p",
            0,
            pqrs.s
                .iter()
                .filter(|f| pow_compose(f.image(), p) != id_k)
                .count()
                + pqrs
                    .s
                    .iter()
                    .flat_map(|f| pqrs.s.iter().map(move |g2| (f, g2)))
                    .filter(|(f, g2)| {
                        map_algebra::compose(f.image(), g2.image()).unwrap()
                            != map_algebra::compose(g2.image(), f.image()).unwrap()
                    })
                    .count(),
        );
        let pow_add = |cod: &FiniteGroup, img: &[El], n: usize| -> Vec<El> {
            let mut acc = vec![0 as El; img.len()];
            for _ in 0..n {
                acc = map_algebra::add(cod, &acc, img).unwrap();
            }
            acc
        };
        rep.claim(
            "Q elementary abelian of exponent p",
            0,
            pqrs.q
                .iter()
                .filter(|f| pow_add(h, f.image(), p) != vec![0 as El; k.order()])
                .count(),
        );
        rep.claim(
            "R elementary abelian of exponent p",
            0,
            pqrs.r
                .iter()
                .filter(|f| pow_add(k, f.image(), p) != vec![0 as El; h.order()])
                .count(),
        );

        // Absorption and annihilation between the blocks.
        let count_pairs = |n: &mut ClaimReport,
                           name: &str,
                           lhs: &dyn Fn() -> usize| {
            n.claim(name, 0, lhs());
        };
        count_pairs(&mut rep, "alpha beta = beta for all alpha, beta", &|| {
            pqrs.p
                .iter()
                .flat_map(|a| pqrs.q.iter().map(move |b| (a, b)))
                .filter(|(a, b)| {
                    map_algebra::compose(a.image(), b.image()).unwrap() != b.image()
                })
                .count()
        });
        count_pairs(&mut rep, "beta delta = beta for all beta, delta", &|| {
            pqrs.q
                .iter()
                .flat_map(|b| pqrs.s.iter().map(move |d2| (b, d2)))
                .filter(|(b, d2)| {
                    map_algebra::compose(b.image(), d2.image()).unwrap() != b.image()
                })
                .count()
        });
        count_pairs(&mut rep, "gamma alpha = gamma for all gamma, alpha", &|| {
            pqrs.r
                .iter()
                .flat_map(|c2| pqrs.p.iter().map(move |a| (c2, a)))
                .filter(|(c2, a)| {
                    map_algebra::compose(c2.image(), a.image()).unwrap() != c2.image()
                })
                .count()
        });
        count_pairs(&mut rep, "delta gamma = gamma for all delta, gamma", &|| {
            pqrs.s
                .iter()
                .flat_map(|d2| pqrs.r.iter().map(move |c2| (d2, c2)))
                .filter(|(d2, c2)| {
                    map_algebra::compose(d2.image(), c2.image()).unwrap() != c2.image()
                })
                .count()
        });
        count_pairs(&mut rep, "beta gamma = 0 for all beta, gamma", &|| {
            pqrs.q
                .iter()
                .flat_map(|b| pqrs.r.iter().map(move |c2| (b, c2)))
                .filter(|(b, c2)| {
                    map_algebra::compose(b.image(), c2.image())
                        .unwrap()
                        .iter()
                        .any(|&v| v != 0)
                })
                .count()
        });
        count_pairs(&mut rep, "gamma beta = 0 for all gamma, beta", &|| {
            pqrs.r
                .iter()
                .flat_map(|c2| pqrs.q.iter().map(move |b| (c2, b)))
                .filter(|(c2, b)| {
                    map_algebra::compose(c2.image(), b.image())
                        .unwrap()
                        .iter()
                        .any(|&v| v != 0)
                })
                .count()
        });
        rep
    }

    /// The full matrix group: order `p^6`, the product decomposition
    /// `ABCD` with its hypothesis, and elementary abelian structure —
    /// via a complete composition table when the group is small enough
    /// to afford one, otherwise via element orders plus commuting
    /// generators.
    pub fn verify_autc(&self) -> ClaimReport {
        let mut rep = ClaimReport::default();
        let p = self.p;
        let matrices = enumerate_ac(&self.mp);
        rep.claim("|Aut_c| by direct enumeration", p.pow(6), matrices.len());

        match verify_abcd_product(&self.mp) {
            Ok(r) => {
                rep.claim("product hypothesis (1 - beta gamma in P)", true, r.hypothesis_holds);
                rep.claim("ABCD covers the whole matrix group", true, r.abcd_equals_ac);
                rep.claim("|ABCD|", p.pow(6), r.abcd_order);
            }
            Err(e) => rep.claim("ABCD product verdict", "computable", format!("error: {e}")),
        }

        if matrices.len() <= 1024 {
            // Small enough: realize the composition table as a group and
            // probe it head-on.
            let n = matrices.len();
            let mut table = Vec::with_capacity(n * n);
            let mut closed = true;
            'tab: for m2 in &matrices {
                for m1 in &matrices {
                    let prod = compose_matrices(&self.mp, m2, m1).expect("same source");
                    match matrices.binary_search(&prod) {
                        Ok(idx) => table.push(idx as El),
                        Err(_) => {
                            closed = false;
                            break 'tab;
                        }
                    }
                }
            }
            rep.claim("matrix set closed under composition", true, closed);
            if closed {
                match FiniteGroup::from_flat("AutC", n, table) {
                    Ok(g) => {
                        let probe = structure_probe(&g);
                        rep.claim("matrix group abelian", true, probe.is_abelian);
                        rep.claim("matrix group exponent", p, probe.exponent);
                        rep.claim(
                            "matrix group elementary abelian",
                            format!("Some({p})"),
                            format!("{:?}", probe.elementary_abelian_p),
                        );
                        rep.claim(
                            "matrix group invariant factors",
                            format!("{:?}", vec![p as u64; 6]),
                            format!("{:?}", probe.abelian_invariants.unwrap_or_default()),
                        );
                    }
                    Err(e) => rep.claim("composition table forms a group", "yes", format!("no: {e}")),
                }
            }
        } else {
            // Too large for a table: exponent p per element, plus
            // commuting block generators; with the covering claim above
            // this pins the same structure.
            let id = CentralAutMatrix::identity(&self.mp);
            let bad_order = matrices
                .iter()
                .filter(|m| {
                    let mut acc = (*m).clone();
                    for _ in 0..p - 1 {
                        acc = compose_matrices(&self.mp, m, &acc).expect("same source");
                    }
                    acc != id
                })
                .count();
            rep.claim("every matrix has order dividing p", 0, bad_order);
            match crate::central_aut::compute_pqrs(&self.mp) {
                Ok(pqrs) => {
                    let union: Vec<&CentralAutMatrix> = pqrs
                        .a
                        .iter()
                        .chain(&pqrs.b)
                        .chain(&pqrs.c)
                        .chain(&pqrs.d)
                        .collect();
                    let bad = union
                        .iter()
                        .flat_map(|x| union.iter().map(move |y| (x, y)))
                        .filter(|(x, y)| {
                            compose_matrices(&self.mp, x, y).expect("same source")
                                != compose_matrices(&self.mp, y, x).expect("same source")
                        })
                        .count();
                    rep.claim("block generators pairwise commute", 0, bad);
                }
                Err(e) => rep.claim("block generators available", "yes", format!("no: {e}")),
            }
        }
        rep
    }

    /// Every claim the family makes, in build / center / subgroup /
    /// matrix-group order.
    pub fn verify_all(&self) -> ClaimReport {
        self.verify_build()
            .merge(self.verify_center())
            .merge(self.verify_pqrs())
            .merge(self.verify_autc())
    }
}
