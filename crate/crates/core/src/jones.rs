//! Kauffman bracket state sums and the Jones polynomial.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};
use crate::gauss::{gauss_code, GaussCode};

/// Largest crossing count accepted by the state sum (2^c states).
pub const MAX_CROSSINGS: usize = 20;

/// Integer Laurent polynomial in a single variable. Exponents are stored as
/// integers; for Jones polynomials they count quarter powers of `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    /// Builds a polynomial in `t` from `(exponent of t, coefficient)` pairs.
    pub fn from_t_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_term(c, 4 * e);
        }
        p
    }

    fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coefficient(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == LaurentPoly::one()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in o.terms() {
            r.add_term(c, e);
        }
        r
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in o.terms() {
                r.add_term(c1 * c2, e1 + e2);
            }
        }
        r
    }

    pub fn scale_exponents(&self, k: i32) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e, c) in self.terms() {
            r.add_term(c, e * k);
        }
        r
    }

    /// `t -> 1/t`.
    pub fn mirror(&self) -> LaurentPoly {
        self.scale_exponents(-1)
    }

    /// Value at the variable equal to 1 (for Jones: `V(1) = 1` for every knot).
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Writes the polynomial in `t`, reading exponents as quarter powers.
    pub fn display_in_t(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let (neg, mag) = (c < 0, c.unsigned_abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = quarter_power(e);
            match (mag, power.as_str()) {
                (m, "") => out.push_str(&format!("{m}")),
                (1, p) => out.push_str(p),
                (m, p) => out.push_str(&format!("{m}*{p}")),
            }
        }
        out
    }
}

fn quarter_power(e: i32) -> String {
    if e == 0 {
        return String::new();
    }
    if e % 4 == 0 {
        let k = e / 4;
        return if k == 1 { "t".into() } else { format!("t^{k}") };
    }
    let g = gcd(e.unsigned_abs(), 4) as i32;
    format!("t^({}/{})", e / g, 4 / g)
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in_t())
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
            true
        } else {
            false
        }
    }
}

/// Kauffman bracket `<D>` as a polynomial in `A` (exponents in powers of `A`).
pub fn kauffman_bracket(code: &GaussCode) -> Result<LaurentPoly> {
    code.validate()?;
    let c = code.crossing_count();
    if c > MAX_CROSSINGS {
        return Err(Error::Capacity {
            crossings: c,
            limit: MAX_CROSSINGS,
        });
    }
    if c == 0 {
        return Ok(LaurentPoly::one());
    }
    let m = 2 * c;
    // Arc k runs from visit k to visit k + 1: node 2k leaves visit k, node 2k + 1 arrives at visit k + 1.
    let leave = |k: usize| 2 * k;
    let arrive = |k: usize| 2 * ((k + m - 1) % m) + 1;
    let labels: Vec<usize> = {
        let mut l: Vec<usize> = code.entries.iter().map(|e| e.label).collect();
        l.sort_unstable();
        l.dedup();
        l
    };
    // (A-smoothing pairs, B-smoothing pairs) per crossing.
    let mut joins: Vec<[(usize, usize); 4]> = Vec::with_capacity(c);
    for &label in &labels {
        let pos = |over: bool| {
            code.entries
                .iter()
                .position(|e| e.label == label && e.over == over)
                .expect("validated code")
        };
        let (o, u) = (pos(true), pos(false));
        let (o_in, o_out, u_in, u_out) = (arrive(o), leave(o), arrive(u), leave(u));
        let sign = code.entries[o].sign;
        let a = [(u_out, o_in), (u_in, o_out)];
        let b = [(u_in, o_in), (u_out, o_out)];
        let (a, b) = if sign > 0 { (a, b) } else { (b, a) };
        joins.push([a[0], a[1], b[0], b[1]]);
    }
    // counts[(a_minus_b, loops)]
    let mut counts: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    for state in 0u32..(1u32 << c) {
        let mut dsu = Dsu::new(2 * m);
        let mut comps = 2 * m;
        for k in 0..m {
            if dsu.union(leave(k), 2 * k + 1) {
                comps -= 1;
            }
        }
        let mut a_count = 0i32;
        for (i, j) in joins.iter().enumerate() {
            let pairs = if state >> i & 1 == 0 {
                a_count += 1;
                &j[..2]
            } else {
                &j[2..]
            };
            for &(x, y) in pairs {
                if dsu.union(x, y) {
                    comps -= 1;
                }
            }
        }
        *counts.entry((2 * a_count - c as i32, comps)).or_insert(0) += 1;
    }
    // d = -A^2 - A^-2
    let d = LaurentPoly::monomial(-1, 2).add(&LaurentPoly::monomial(-1, -2));
    let mut powers = vec![LaurentPoly::one()];
    let mut total = LaurentPoly::zero();
    for (&(e, loops), &n) in &counts {
        while powers.len() < loops {
            let next = powers.last().expect("non-empty").mul(&d);
            powers.push(next);
        }
        total = total.add(&LaurentPoly::monomial(n, e).mul(&powers[loops - 1]));
    }
    Ok(total)
}

/// Jones polynomial of a signed Gauss code, exponents in quarter powers of `t`.
pub fn jones_from_gauss(code: &GaussCode) -> Result<LaurentPoly> {
    let bracket = kauffman_bracket(code)?;
    let w = code.writhe() as i32;
    // (-A^3)^(-w)
    let norm = LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, -3 * w);
    // A = t^(-1/4): A^e becomes t^(-e/4).
    Ok(norm.mul(&bracket).mirror())
}

pub fn kauffman_jones(d: &KnotDiagram) -> Result<LaurentPoly> {
    jones_from_gauss(&gauss_code(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotClass {
    Unknot,
    TrefoilLeft,
    TrefoilRight,
    Other(LaurentPoly),
}

impl KnotClass {
    pub fn name(&self) -> &'static str {
        match self {
            KnotClass::Unknot => "Unknot",
            KnotClass::TrefoilLeft | KnotClass::TrefoilRight => "Trefoil",
            KnotClass::Other(_) => "Other",
        }
    }

    pub fn is_trefoil(&self) -> bool {
        matches!(self, KnotClass::TrefoilLeft | KnotClass::TrefoilRight)
    }

    pub fn mirror(&self) -> KnotClass {
        match self {
            KnotClass::Unknot => KnotClass::Unknot,
            KnotClass::TrefoilLeft => KnotClass::TrefoilRight,
            KnotClass::TrefoilRight => KnotClass::TrefoilLeft,
            KnotClass::Other(p) => KnotClass::Other(p.mirror()),
        }
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotClass::Unknot => f.write_str("Unknot"),
            KnotClass::TrefoilLeft => f.write_str("Trefoil (left-handed)"),
            KnotClass::TrefoilRight => f.write_str("Trefoil (right-handed)"),
            KnotClass::Other(p) => write!(f, "Other (Jones {p})"),
        }
    }
}

/// Jones polynomial of the right-handed trefoil (all crossings positive):
/// `t + t^3 - t^4`.
pub fn right_trefoil_jones() -> LaurentPoly {
    LaurentPoly::from_t_terms(&[(1, 1), (3, 1), (4, -1)])
}

pub fn left_trefoil_jones() -> LaurentPoly {
    right_trefoil_jones().mirror()
}

/// Classification from the Jones polynomial alone. A trivial Jones polynomial
/// is reported as the unknot; that inference is sound only for the small
/// diagrams this crate produces, not for knots in general.
pub fn classify_jones(jones: &LaurentPoly) -> KnotClass {
    if jones.is_one() {
        KnotClass::Unknot
    } else if *jones == right_trefoil_jones() {
        KnotClass::TrefoilRight
    } else if *jones == left_trefoil_jones() {
        KnotClass::TrefoilLeft
    } else {
        KnotClass::Other(jones.clone())
    }
}

pub fn classify(d: &KnotDiagram) -> Result<KnotClass> {
    Ok(classify_jones(&kauffman_jones(d)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> GaussCode {
        GaussCode::parse(s).unwrap()
    }

    #[test]
    fn unknot_diagrams() {
        assert!(jones_from_gauss(&GaussCode::default()).unwrap().is_one());
        assert!(jones_from_gauss(&code("O1+ U1+")).unwrap().is_one());
        assert!(jones_from_gauss(&code("O1- U1-")).unwrap().is_one());
        assert!(jones_from_gauss(&code("O1+ O2- U1+ U2-")).unwrap().is_one());
    }

    #[test]
    fn kink_brackets() {
        // Positive kink multiplies the bracket by -A^3, negative by -A^-3.
        assert_eq!(
            kauffman_bracket(&code("O1+ U1+")).unwrap(),
            LaurentPoly::monomial(-1, 3)
        );
        assert_eq!(
            kauffman_bracket(&code("U1- O1-")).unwrap(),
            LaurentPoly::monomial(-1, -3)
        );
    }

    #[test]
    fn trefoils() {
        let right = jones_from_gauss(&code("O1+ U2+ O3+ U1+ O2+ U3+")).unwrap();
        assert_eq!(right, right_trefoil_jones());
        let left = jones_from_gauss(&code("O1- U2- O3- U1- O2- U3-")).unwrap();
        assert_eq!(left, left_trefoil_jones());
        assert_eq!(left.to_string(), "-t^-4 + t^-3 + t^-1");
        assert_eq!(right.to_string(), "t + t^3 - t^4");
        assert_eq!(classify_jones(&right), KnotClass::TrefoilRight);
    }

    #[test]
    fn granny_knot_is_other() {
        let c = code("O1+ U2+ O3+ U1+ O2+ U3+ O4+ U5+ O6+ U4+ O5+ U6+");
        let j = jones_from_gauss(&c).unwrap();
        assert_eq!(j, right_trefoil_jones().mul(&right_trefoil_jones()));
        assert!(matches!(classify_jones(&j), KnotClass::Other(_)));
        assert_eq!(j.eval_at_one(), 1);
    }

    #[test]
    fn capacity_limit() {
        let mut entries = Vec::new();
        for l in 1..=21 {
            entries.push(crate::gauss::GaussEntry {
                label: l,
                over: true,
                sign: 1,
            });
            entries.push(crate::gauss::GaussEntry {
                label: l,
                over: false,
                sign: 1,
            });
        }
        let c = GaussCode { entries };
        assert!(matches!(
            kauffman_bracket(&c),
            Err(Error::Capacity {
                crossings: 21,
                limit: 20
            })
        ));
    }

    #[test]
    fn quarter_exponents_display() {
        assert_eq!(LaurentPoly::monomial(2, 2).to_string(), "2*t^(1/2)");
        assert_eq!(LaurentPoly::monomial(-1, -3).to_string(), "-t^(-3/4)");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
