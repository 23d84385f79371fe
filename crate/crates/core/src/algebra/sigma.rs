//! Elements of the observable algebra written in the basis of central characters.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::util::{factorial, rat_frac};

/// Largest ground set `|μ| + |ν|` the structure-constant enumeration accepts.
pub const PRODUCT_GROUND_LIMIT: usize = 18;

/// `deg_K(Σ_μ) = |μ| + m₁(μ)`.
pub fn kerov_degree(mu: &Partition) -> usize {
    mu.size() + mu.multiplicity(1)
}

/// `wt(Σ_μ) = |μ| + ℓ(μ)`.
pub fn weight(mu: &Partition) -> usize {
    mu.size() + mu.len()
}

/// Finite combination `Σ c_μ Σ_μ` with exact rational coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaElement {
    terms: BTreeMap<Partition, BigRational>,
}

impl SigmaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis element `Σ_μ`.
    pub fn basis(mu: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mu, BigRational::one());
        SigmaElement { terms }
    }

    /// `Σ_k`.
    pub fn cyclic(k: usize) -> Self {
        Self::basis(Partition::row(k))
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mu: &Partition) -> BigRational {
        self.terms.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, mu: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mu).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &SigmaElement) -> SigmaElement {
        let mut out = self.clone();
        for (mu, c) in &other.terms {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SigmaElement {
        let mut out = SigmaElement::zero();
        for (mu, v) in &self.terms {
            out.add_term(mu.clone(), v * c);
        }
        out
    }

    /// Highest Kerov degree among the terms; `None` for zero.
    pub fn kerov_degree(&self) -> Option<usize> {
        self.terms.keys().map(kerov_degree).max()
    }

    pub fn weight(&self) -> Option<usize> {
        self.terms.keys().map(weight).max()
    }

    /// Terms of exactly the given Kerov degree.
    pub fn top_kerov_part(&self, degree: usize) -> SigmaElement {
        SigmaElement {
            terms: self
                .terms
                .iter()
                .filter(|(mu, _)| kerov_degree(mu) == degree)
                .map(|(mu, c)| (mu.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product in the observable algebra.
    pub fn mul(&self, other: &SigmaElement) -> Result<SigmaElement> {
        let mut out = SigmaElement::zero();
        for (mu, a) in &self.terms {
            for (nu, b) in &other.terms {
                let prod = basis_product(mu, nu)?;
                out = out.add(&prod.scale(&(a * b)));
            }
        }
        Ok(out)
    }

    /// Evaluates `Σ c_μ Σ_μ(λ)` with a character evaluator.
    pub fn evaluate(
        &self,
        shape: &Partition,
        ev: &mut crate::characters::CharacterEvaluator,
    ) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (mu, c)| acc + c * ev.central_character(shape, mu))
    }

    /// JSON object `{"4,4,1,1": "24", …}`; the empty partition is `""`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(mu, c)| (partition_key(mu), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SigmaElement> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mut out = SigmaElement::zero();
        for (k, c) in obj {
            let mu: Partition = k.parse()?;
            let s = c.as_str().ok_or_else(|| Error::Parse(format!("coefficient of {k:?}")))?;
            let c: BigRational = s.parse().map_err(|e| Error::Parse(format!("{s:?}: {e:?}")))?;
            out.add_term(mu, c);
        }
        Ok(out)
    }
}

fn partition_key(mu: &Partition) -> String {
    mu.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SigmaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest Kerov degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| kerov_degree(b.0).cmp(&kerov_degree(a.0)).then(b.0.cmp(a.0)));
        for (i, (mu, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if !c.is_one() {
                write!(f, "{c}·")?;
            }
            write!(f, "Σ[{}]", partition_key(mu))?;
        }
        Ok(())
    }
}

/// Permutation word on `0..ground` and class of the product `x∘y`.
fn product_class(x: &[usize], support_x: usize, y: &[usize], in_y: &[bool]) -> Vec<usize> {
    let ground = x.len();
    let mut seen = vec![false; ground];
    let mut lens = Vec::new();
    for s in 0..ground {
        if seen[s] || !(s < support_x || in_y[s]) {
            continue;
        }
        let mut len = 0;
        let mut p = s;
        while !seen[p] {
            seen[p] = true;
            p = x[y[p]];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

fn check_ground(mu: &Partition, nu: &Partition) -> Result<usize> {
    let ground = mu.size() + nu.size();
    if ground > PRODUCT_GROUND_LIMIT {
        return Err(Error::ResourceGuard(format!(
            "product Σ{mu}·Σ{nu} needs a ground set of {ground} > {PRODUCT_GROUND_LIMIT}"
        )));
    }
    Ok(ground)
}

/// Structure constants of `Σ_μ · Σ_ν`.
///
/// The left factor is fixed to the canonical partial permutation of class `μ`
/// on `0..|μ|`. The right factor runs over labelings of the cells of `ν` by
/// distinct points, where a point outside `0..|μ|` is always the next unused
/// fresh point. Each labeling pattern with `j` fresh points stands for the
/// `|ν|^{↓j}` labelings over the ground set `0..|μ|+|ν|`, and the coefficient
/// of `Σ_λ` equals the number of patterns whose product has class `λ`.
pub fn basis_product(mu: &Partition, nu: &Partition) -> Result<SigmaElement> {
    let ground = check_ground(mu, nu)?;
    let old = mu.size();
    let x = crate::square_roots::representative(&mu.pad_ones(nu.size()));
    let cells = nu.size();
    let mut labels = vec![0usize; cells];
    let mut used = vec![false; ground];
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();

    struct Ctx<'a> {
        x: &'a [usize],
        old: usize,
        cycles: &'a [usize],
        counts: &'a mut HashMap<Vec<usize>, u64>,
    }

    fn leaf(ctx: &mut Ctx<'_>, labels: &[usize], used: &[bool]) {
        let ground = ctx.x.len();
        let mut y: Vec<usize> = (0..ground).collect();
        let mut start = 0;
        for &len in ctx.cycles {
            for j in 0..len {
                y[labels[start + j]] = labels[start + (j + 1) % len];
            }
            start += len;
        }
        let class = product_class(ctx.x, ctx.old, &y, used);
        *ctx.counts.entry(class).or_insert(0) += 1;
    }

    fn rec(ctx: &mut Ctx<'_>, pos: usize, fresh: usize, labels: &mut [usize], used: &mut [bool]) {
        if pos == labels.len() {
            leaf(ctx, labels, used);
            return;
        }
        for p in 0..ctx.old {
            if !used[p] {
                used[p] = true;
                labels[pos] = p;
                rec(ctx, pos + 1, fresh, labels, used);
                used[p] = false;
            }
        }
        let f = ctx.old + fresh;
        used[f] = true;
        labels[pos] = f;
        rec(ctx, pos + 1, fresh + 1, labels, used);
        used[f] = false;
    }

    let mut ctx = Ctx { x: &x, old, cycles: nu.parts(), counts: &mut counts };
    rec(&mut ctx, 0, 0, &mut labels, &mut used);

    let mut out = SigmaElement::zero();
    for (class, c) in counts {
        out.add_term(Partition::from_unsorted(class), BigRational::from_integer(BigInt::from(c)));
    }
    Ok(out)
}

/// Reference route for [`basis_product`]: enumerate every labeling of the cells
/// of `ν` by distinct points of `0..|μ|+|ν|` and divide each count by `|ν|^{↓j}`.
pub fn basis_product_by_arrangements(mu: &Partition, nu: &Partition) -> Result<SigmaElement> {
    let ground = check_ground(mu, nu)?;
    let old = mu.size();
    let x = crate::square_roots::representative(&mu.pad_ones(nu.size()));
    let cells = nu.size();
    let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
    let mut labels = vec![0usize; cells];
    let mut used = vec![false; ground];

    fn rec(
        pos: usize,
        labels: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize], &[bool]),
    ) {
        if pos == labels.len() {
            visit(labels, used);
            return;
        }
        for p in 0..used.len() {
            if !used[p] {
                used[p] = true;
                labels[pos] = p;
                rec(pos + 1, labels, used, visit);
                used[p] = false;
            }
        }
    }

    let cycles = nu.parts().to_vec();
    let mut visit = |labels: &[usize], used: &[bool]| {
        let mut y: Vec<usize> = (0..ground).collect();
        let mut start = 0;
        for &len in &cycles {
            for j in 0..len {
                y[labels[start + j]] = labels[start + (j + 1) % len];
            }
            start += len;
        }
        let class = product_class(&x, old, &y, used);
        *counts.entry(class).or_insert(0) += 1;
    };
    rec(0, &mut labels, &mut used, &mut visit);

    let mut out = SigmaElement::zero();
    for (class, c) in counts {
        let lam = Partition::from_unsorted(class);
        let fresh = lam.size() - old;
        let div = crate::util::falling_factorial(cells, fresh);
        out.add_term(lam, BigRational::new(BigInt::from(c), BigInt::from(div)));
    }
    Ok(out)
}

/// `a · Σ_k`; refuses when some term has `|μ| + k` above the ground limit.
pub fn sigma_product(a: &SigmaElement, k: usize) -> Result<SigmaElement> {
    a.mul(&SigmaElement::cyclic(k))
}

/// `(Σ_k)^m` built by repeated multiplication.
pub fn sigma_power(k: usize, m: usize) -> Result<SigmaElement> {
    let mut acc = SigmaElement::basis(Partition::empty());
    for _ in 0..m {
        acc = sigma_product(&acc, k)?;
    }
    Ok(acc)
}

/// `Σ_p m!/((m−2p)!·p!) · (k/2)^p · Σ_{1^{kp} k^{m−2p}}`, the top Kerov component
/// of `(Σ_k)^m`.
pub fn power_top_formula(k: usize, m: usize) -> Result<SigmaElement> {
    if k < 2 || m < 1 {
        return Err(Error::InvalidArgument(format!("need k ≥ 2 and m ≥ 1, got k={k}, m={m}")));
    }
    let mut out = SigmaElement::zero();
    let half_k = rat_frac(k as i64, 2);
    for p in 0..=m / 2 {
        let count = factorial(m) / (factorial(m - 2 * p) * factorial(p));
        let c = BigRational::from_integer(count.into()) * half_k.pow(p as i32);
        crate::util::expect_integer(&c, "top-degree coefficient");
        let mut parts = vec![k; m - 2 * p];
        parts.extend(std::iter::repeat_n(1, k * p));
        out.add_term(Partition::from_unsorted(parts), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn sigma1_squared() {
        let prod = basis_product(&p("1"), &p("1")).unwrap();
        let mut expect = SigmaElement::basis(p("1,1"));
        expect.add_term(p("1"), rat(1));
        assert_eq!(prod, expect);
    }

    #[test]
    fn sigma4_fourth_power_top() {
        let pow = sigma_power(4, 4).unwrap();
        let top = pow.top_kerov_part(16);
        assert_eq!(top.len(), 3);
        assert_eq!(top.coefficient(&p("4,4,4,4")), rat(1));
        assert_eq!(top.coefficient(&p("4,4,1,1,1,1")), rat(24));
        assert_eq!(top.coefficient(&p("1,1,1,1,1,1,1,1")), rat(48));
        assert_eq!(top, power_top_formula(4, 4).unwrap());
    }

    #[test]
    fn formula_small_cases() {
        assert_eq!(power_top_formula(5, 1).unwrap(), SigmaElement::cyclic(5));
        let f = power_top_formula(2, 2).unwrap();
        let mut expect = SigmaElement::basis(p("2,2"));
        expect.add_term(p("1,1"), rat(2));
        assert_eq!(f, expect);
        assert!(power_top_formula(1, 2).is_err());
    }

    #[test]
    fn ground_guard() {
        let big = SigmaElement::basis(p("9,6"));
        assert!(matches!(sigma_product(&big, 4), Err(Error::ResourceGuard(_))));
    }

    #[test]
    fn json_round_trip() {
        let e = power_top_formula(4, 4).unwrap();
        let j = e.to_json();
        assert_eq!(j["4,4,1,1,1,1"], "24");
        assert_eq!(SigmaElement::from_json(&j).unwrap(), e);
    }

    #[test]
    fn disjoint_parts_leading_term() {
        let prod = basis_product(&p("2"), &p("3")).unwrap();
        let top = prod.top_kerov_part(5);
        assert_eq!(top, SigmaElement::basis(p("3,2")));
        assert!(prod.kerov_degree().unwrap() == 5);
    }
}
