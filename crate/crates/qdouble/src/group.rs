//! Finite groups given by multiplication table, with the constructors used
//! by the test catalog. Elements are canonical indices; the identity is
//! always index 0, so higher modules can key scalar tables by plain indices.

use crate::report::Report;
use serde::Serialize;
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group size must be positive")]
    ZeroSize,
    #[error("symmetric({0}) exceeds the catalog bound n <= 4")]
    SymmetricTooLarge(usize),
    #[error("element index {0} out of range for group of size {1}")]
    IndexOutOfRange(usize, usize),
    #[error("unknown group descriptor `{0}`")]
    BadDescriptor(String),
    #[error("multiplication table is not square")]
    MalformedTable,
}

pub type Elem = usize;

// Deserialization goes through `load_group_json`, which revalidates the
// table and rebuilds the inverse index.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteGroup {
    pub label: String,
    pub size: usize,
    /// `mul[a][b]` is the index of a*b.
    pub mul: Vec<Vec<Elem>>,
    #[serde(skip)]
    pub inv: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    /// Parses the CLI descriptor syntax: `zn:4`, `s:3`, `d:4`,
    /// `prod(zn:2,zn:2)`.
    pub fn parse(s: &str) -> Result<GroupSpec, GroupError> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            // split at the top-level comma
            let mut depth = 0usize;
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        let a = GroupSpec::parse(&inner[..i])?;
                        let b = GroupSpec::parse(&inner[i + 1..])?;
                        return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
                    }
                    _ => {}
                }
            }
            return Err(GroupError::BadDescriptor(s.to_string()));
        }
        let (kind, n) = s
            .split_once(':')
            .ok_or_else(|| GroupError::BadDescriptor(s.to_string()))?;
        let n: usize = n
            .parse()
            .map_err(|_| GroupError::BadDescriptor(s.to_string()))?;
        match kind {
            "zn" => Ok(GroupSpec::Cyclic(n)),
            "d" => Ok(GroupSpec::Dihedral(n)),
            "s" => Ok(GroupSpec::Symmetric(n)),
            _ => Err(GroupError::BadDescriptor(s.to_string())),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("zn:{n}"),
            GroupSpec::Dihedral(n) => format!("d:{n}"),
            GroupSpec::Symmetric(n) => format!("s:{n}"),
            GroupSpec::Product(a, b) => format!("prod({},{})", a.descriptor(), b.descriptor()),
        }
    }
}

pub fn make_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::Product(a, b) => {
            let a = make_group(a)?;
            let b = make_group(b)?;
            Ok(direct_product(&a, &b))
        }
    }
}

impl FiniteGroup {
    pub fn from_mul_table(label: &str, mul: Vec<Vec<Elem>>) -> Result<FiniteGroup, GroupError> {
        let size = mul.len();
        if size == 0 {
            return Err(GroupError::ZeroSize);
        }
        if mul.iter().any(|row| row.len() != size)
            || mul.iter().flatten().any(|&e| e >= size)
        {
            return Err(GroupError::MalformedTable);
        }
        let mut inv = vec![0; size];
        for a in 0..size {
            for b in 0..size {
                if mul[a][b] == 0 && mul[b][a] == 0 {
                    inv[a] = b;
                }
            }
        }
        Ok(FiniteGroup {
            label: label.to_string(),
            size,
            mul,
            inv,
        })
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a][b]
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    /// x^{-1} s x.
    pub fn conj(&self, x: Elem, s: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), s), x)
    }

    pub fn check_index(&self, a: Elem) -> Result<(), GroupError> {
        if a >= self.size {
            Err(GroupError::IndexOutOfRange(a, self.size))
        } else {
            Ok(())
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.size
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroSize);
    }
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_mul_table(&format!("Z{n}"), mul)
}

/// Dihedral group of order 2n. Indices 0..n are the rotations r^i,
/// indices n..2n are the reflections s r^i.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroSize);
    }
    let size = 2 * n;
    let idx = |refl: usize, rot: usize| refl * n + rot;
    let mut mul = vec![vec![0; size]; size];
    for e1 in 0..2 {
        for k1 in 0..n {
            for e2 in 0..2 {
                for k2 in 0..n {
                    // s^e1 r^k1 * s^e2 r^k2 = s^(e1+e2) r^((-1)^e2 k1 + k2)
                    let k = if e2 == 0 { (k1 + k2) % n } else { (n - k1 + k2) % n };
                    mul[idx(e1, k1)][idx(e2, k2)] = idx((e1 + e2) % 2, k);
                }
            }
        }
    }
    FiniteGroup::from_mul_table(&format!("D{n}"), mul)
}

/// Symmetric group on n letters, n <= 4. Permutations enumerated in
/// lexicographic one-line order, so the identity sits at index 0.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::ZeroSize);
    }
    if n > 4 {
        return Err(GroupError::SymmetricTooLarge(n));
    }
    let perms = permutations(n);
    let index: HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let size = perms.len();
    let mut mul = vec![vec![0; size]; size];
    for (a, pa) in perms.iter().enumerate() {
        for (b, pb) in perms.iter().enumerate() {
            // (a*b)(i) = a(b(i))
            let comp: Vec<usize> = (0..n).map(|i| pa[pb[i]]).collect();
            mul[a][b] = index[&comp];
        }
    }
    FiniteGroup::from_mul_table(&format!("S{n}"), mul)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                current.push(i);
                rec(n, current, used, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let size = a.size * b.size;
    let idx = |x: Elem, y: Elem| x * b.size + y;
    let mut mul = vec![vec![0; size]; size];
    for x1 in 0..a.size {
        for y1 in 0..b.size {
            for x2 in 0..a.size {
                for y2 in 0..b.size {
                    mul[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
                }
            }
        }
    }
    FiniteGroup::from_mul_table(&format!("{}x{}", a.label, b.label), mul)
        .expect("product of valid tables")
}

/// Checks the group axioms on the raw table: associativity, two-sided
/// identity at index 0, two-sided inverses, and the Latin square property.
/// Failures are reported with a witness tuple, not raised.
pub fn verify_group(g: &FiniteGroup) -> Report {
    let n = g.size;
    let mut report = Report::new();

    let mut assoc = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                    assoc = Some((
                        vec![a, b, c],
                        format!("(a*b)*c != a*(b*c) at (a,b,c)=({a},{b},{c})"),
                    ));
                    break 'outer;
                }
            }
        }
    }
    report.check("associativity", assoc);

    let mut ident = None;
    for a in 0..n {
        if g.mul(0, a) != a || g.mul(a, 0) != a {
            ident = Some((vec![a], format!("identity fails at element {a}")));
            break;
        }
    }
    report.check("identity", ident);

    let mut inverse = None;
    for a in 0..n {
        let b = g.inv(a);
        if g.mul(a, b) != 0 || g.mul(b, a) != 0 {
            inverse = Some((vec![a], format!("no two-sided inverse for element {a}")));
            break;
        }
    }
    report.check("inverses", inverse);

    let mut latin = None;
    'latin: for a in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for b in 0..n {
            row[g.mul(a, b)] = true;
            col[g.mul(b, a)] = true;
        }
        for b in 0..n {
            if !row[b] || !col[b] {
                latin = Some((vec![a, b], format!("row/column {a} misses element {b}")));
                break 'latin;
            }
        }
    }
    report.check("latin_square", latin);

    report
}

// rebuild the inverse table after deserialization
pub fn load_group_json(v: &serde_json::Value) -> Result<FiniteGroup, GroupError> {
    let label = v
        .get("label")
        .and_then(|l| l.as_str())
        .unwrap_or("unnamed")
        .to_string();
    let mul: Vec<Vec<Elem>> = serde_json::from_value(
        v.get("mul")
            .cloned()
            .ok_or_else(|| GroupError::BadDescriptor("missing mul table".into()))?,
    )
    .map_err(|_| GroupError::MalformedTable)?;
    FiniteGroup::from_mul_table(&label, mul)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = cyclic(1).unwrap();
        assert_eq!(g.size, 1);
        assert!(verify_group(&g).all_passed());

        let g = cyclic(4).unwrap();
        assert_eq!(g.mul(2, 3), 1);
        assert!(verify_group(&g).all_passed());
    }

    #[test]
    fn zero_size_rejected() {
        assert_eq!(cyclic(0).unwrap_err(), GroupError::ZeroSize);
        assert_eq!(symmetric(5).unwrap_err(), GroupError::SymmetricTooLarge(5));
    }

    #[test]
    fn s3_has_three_involutions() {
        // oracle: element order computed by iterated multiplication
        let g = symmetric(3).unwrap();
        assert_eq!(g.size, 6);
        let involutions = g.elements().filter(|&a| g.element_order(a) == 2).count();
        assert_eq!(involutions, 3);
        assert!(verify_group(&g).all_passed());
    }

    #[test]
    fn conj_identity_and_abelian() {
        let g = symmetric(3).unwrap();
        for x in g.elements() {
            assert_eq!(g.conj(x, 0), 0);
        }
        let a = cyclic(6).unwrap();
        for x in a.elements() {
            for s in a.elements() {
                assert_eq!(a.conj(x, s), s);
            }
        }
    }

    #[test]
    fn conj_transposition_swaps_three_cycles() {
        // permutation-composition oracle: conjugating a 3-cycle by a
        // transposition yields the other 3-cycle
        let g = symmetric(3).unwrap();
        let three_cycles: Vec<_> = g.elements().filter(|&a| g.element_order(a) == 3).collect();
        assert_eq!(three_cycles.len(), 2);
        let t = g.elements().find(|&a| g.element_order(a) == 2).unwrap();
        assert_eq!(g.conj(t, three_cycles[0]), three_cycles[1]);
        assert_eq!(g.conj(t, three_cycles[1]), three_cycles[0]);
    }

    #[test]
    fn conj_composes_contravariantly() {
        let g = dihedral(4).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                for s in g.elements() {
                    assert_eq!(g.conj(g.mul(x, y), s), g.conj(y, g.conj(x, s)));
                }
            }
        }
    }

    #[test]
    fn corrupted_table_reported_with_witness() {
        let mut g = cyclic(4).unwrap();
        g.mul[2][2] = 1; // should be 0
        let report = verify_group(&g);
        assert!(!report.all_passed());
        let fail = report.failed_clauses().next().unwrap();
        assert!(fail.witness.is_some());
    }

    #[test]
    fn catalog_groups_pass() {
        for g in [
            cyclic(2).unwrap(),
            cyclic(3).unwrap(),
            cyclic(4).unwrap(),
            dihedral(4).unwrap(),
            symmetric(4).unwrap(),
            direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()),
        ] {
            assert!(verify_group(&g).all_passed(), "{} failed", g.label);
            for a in g.elements() {
                assert_eq!(g.inv(g.inv(a)), a);
            }
        }
    }

    #[test]
    fn descriptor_roundtrip() {
        for s in ["zn:4", "s:3", "d:4", "prod(zn:2,zn:2)"] {
            let spec = GroupSpec::parse(s).unwrap();
            assert_eq!(spec.descriptor(), s);
            make_group(&spec).unwrap();
        }
        assert!(GroupSpec::parse("zn:x").is_err());
        assert!(GroupSpec::parse("q:3").is_err());
    }
}
