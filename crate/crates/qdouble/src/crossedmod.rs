//! The braided category of cocycle crossed G-modules: G-graded spaces with
//! a right cocycle action of kG, their tensor product, associator and
//! braiding, and the correspondence with left D^phi(G)-modules.
//!
//! Every categorical map is a concrete sparse matrix between flat
//! tensor-product bases (index of v_i (x) w_j is i*dim(W) + j), so equality
//! of composites is exact matrix equality. All maps arising here are
//! monomial -- at most one nonzero per column -- and compositions preserve
//! that, which is what makes triple-tensor checks on regular objects
//! tractable.

use crate::cochain::Cochain3;
use crate::cyclotomic::{Cyc, CycError};
use crate::dpr::DPRInstance;
use crate::group::{Elem, FiniteGroup};
use crate::qhopf::SparseVec;
use crate::report::Report;
use crate::solve::LinearSystem;
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrossedError {
    #[error("objects live over different groups or cocycles")]
    Mismatch,
    #[error("scalar error: {0}")]
    Scalar(#[from] CycError),
    #[error("cochain error: {0}")]
    Cochain(#[from] crate::cochain::CochainError),
    #[error("basis vector {0} is not homogeneous under the grading projections")]
    NotHomogeneous(usize),
    #[error("representation law fails at basis pair ({0},{1})")]
    RepresentationLaw(usize, usize),
    #[error("module dimension mismatch")]
    DimMismatch,
    #[error("malformed data: {0}")]
    Malformed(String),
}

/// A cocycle crossed G-module: graded basis with a right kG-action table.
#[derive(Debug, Clone)]
pub struct CrossedGModule {
    pub group: FiniteGroup,
    pub cocycle: Cochain3,
    pub order: u64,
    /// `grading[i]` = |v_i|.
    pub grading: Vec<Elem>,
    /// `action[i][x]` = expansion of v_i ◁ x.
    pub action: Vec<Vec<SparseVec>>,
}

impl CrossedGModule {
    pub fn dim(&self) -> usize {
        self.grading.len()
    }

    /// The unit object: one basis vector of degree e with trivial action.
    pub fn trivial(group: &FiniteGroup, phi: &Cochain3) -> Result<CrossedGModule, CrossedError> {
        let phi = phi.normalized_order()?;
        let order = phi.scalar_order();
        Ok(CrossedGModule {
            group: group.clone(),
            cocycle: phi,
            order,
            grading: vec![0],
            action: vec![vec![vec![(0, Cyc::one(order))]; group.size]],
        })
    }

    /// Applies ◁x to a sparse vector.
    pub fn act(&self, vec: &[(usize, Cyc)], x: Elem) -> SparseVec {
        let mut acc: BTreeMap<usize, Cyc> = BTreeMap::new();
        for (i, c) in vec {
            for (j, cj) in &self.action[*i][x] {
                let add = c.mul(cj).expect("uniform scalar order");
                let entry = match acc.remove(j) {
                    Some(prev) => prev.add(&add).expect("uniform scalar order"),
                    None => add,
                };
                if !entry.is_zero() {
                    acc.insert(*j, entry);
                }
            }
        }
        acc.into_iter().collect()
    }

    fn same_setting(&self, other: &CrossedGModule) -> bool {
        self.group.size == other.group.size
            && self.group.mul == other.group.mul
            && self.cocycle.values == other.cocycle.values
    }
}

/// A linear map between crossed modules, stored column-wise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub order: u64,
    /// `cols[j]` = image of source basis vector j.
    pub cols: Vec<SparseVec>,
}

impl ModuleMap {
    pub fn identity(dim: usize, order: u64) -> ModuleMap {
        ModuleMap {
            source_dim: dim,
            target_dim: dim,
            order,
            cols: (0..dim).map(|i| vec![(i, Cyc::one(order))]).collect(),
        }
    }

    pub fn apply(&self, v: &[(usize, Cyc)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Cyc> = BTreeMap::new();
        for (j, c) in v {
            for (i, ci) in &self.cols[*j] {
                let add = c.mul(ci).expect("uniform scalar order");
                let entry = match acc.remove(i) {
                    Some(prev) => prev.add(&add).expect("uniform scalar order"),
                    None => add,
                };
                if !entry.is_zero() {
                    acc.insert(*i, entry);
                }
            }
        }
        acc.into_iter().collect()
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        debug_assert_eq!(self.source_dim, other.target_dim);
        ModuleMap {
            source_dim: other.source_dim,
            target_dim: self.target_dim,
            order: self.order,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// f (x) g on the flat tensor bases.
    pub fn tensor(f: &ModuleMap, g: &ModuleMap) -> ModuleMap {
        let mut cols = Vec::with_capacity(f.source_dim * g.source_dim);
        for fc in &f.cols {
            for gc in &g.cols {
                let mut col = Vec::with_capacity(fc.len() * gc.len());
                for (i, ci) in fc {
                    for (j, cj) in gc {
                        col.push((
                            i * g.target_dim + j,
                            ci.mul(cj).expect("uniform scalar order"),
                        ));
                    }
                }
                col.sort_by_key(|(k, _)| *k);
                cols.push(col);
            }
        }
        ModuleMap {
            source_dim: f.source_dim * g.source_dim,
            target_dim: f.target_dim * g.target_dim,
            order: f.order,
            cols,
        }
    }

    /// At most one nonzero per column.
    pub fn is_monomial(&self) -> bool {
        self.cols.iter().all(|c| c.len() <= 1)
    }

    /// Full column rank on a square map, by exact elimination.
    pub fn is_invertible(&self) -> bool {
        if self.source_dim != self.target_dim {
            return false;
        }
        let mut rows: Vec<Vec<(usize, Cyc)>> = vec![Vec::new(); self.target_dim];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                rows[*i].push((j, c.clone()));
            }
        }
        let mut sys = LinearSystem::new(self.source_dim, self.order);
        for row in rows {
            sys.add_equation(row, Cyc::zero(self.order));
        }
        sys.solve_unique().is_ok()
    }
}

/// The cocycle-action ratio
/// phi(x,y,y^-1 x^-1 s x y) phi(s,x,y) / phi(x, x^-1 s x, y) for s = |v|.
fn action_ratio(phi: &Cochain3, s: Elem, x: Elem, y: Elem) -> Result<Cyc, CycError> {
    let g = &phi.group;
    let xy = g.mul(x, y);
    phi.value(x, y, g.conj(xy, s))
        .mul(phi.value(s, x, y))?
        .div(phi.value(x, g.conj(x, s), y))
}

/// Checks the three object laws: v◁1 = v, grading compatibility
/// |v◁x| = x^-1|v|x, and the cocycle action law.
pub fn verify_object(v: &CrossedGModule) -> Report {
    let g = &v.group;
    let n = g.size;
    let m = v.dim();
    let mut report = Report::new();

    let mut unit = None;
    for i in 0..m {
        let expect = vec![(i, Cyc::one(v.order))];
        if v.action[i][0] != expect {
            unit = Some((vec![i], format!("v{i} ◁ e != v{i}")));
            break;
        }
    }
    report.check("unit_action", unit);

    let mut grade = None;
    'grade: for i in 0..m {
        for x in 0..n {
            let target = g.conj(x, v.grading[i]);
            for (j, _) in &v.action[i][x] {
                if v.grading[*j] != target {
                    grade = Some((
                        vec![i, x, *j],
                        format!(
                            "v{i} ◁ {x} hits degree {} but x^-1|v|x = {target}",
                            v.grading[*j]
                        ),
                    ));
                    break 'grade;
                }
            }
        }
    }
    report.check("grading_compatibility", grade);

    let mut law = None;
    'law: for i in 0..m {
        let s = v.grading[i];
        for x in 0..n {
            let vx = &v.action[i][x];
            for y in 0..n {
                let lhs = v.act(vx, y);
                let ratio = match action_ratio(&v.cocycle, s, x, y) {
                    Ok(r) => r,
                    Err(e) => {
                        law = Some((vec![i, x, y], e.to_string()));
                        break 'law;
                    }
                };
                let rhs: SparseVec = v.action[i][g.mul(x, y)]
                    .iter()
                    .map(|(j, c)| (*j, c.mul(&ratio).expect("uniform scalar order")))
                    .collect();
                if lhs != rhs {
                    law = Some((
                        vec![i, x, y],
                        format!("(v{i} ◁ {x}) ◁ {y} differs from the ratio-scaled v{i} ◁ ({x}{y})"),
                    ));
                    break 'law;
                }
            }
        }
    }
    report.check("cocycle_action_law", law);

    report
}

/// Checks that a map is a morphism of crossed modules: grading-preserving
/// and intertwining the right action.
pub fn verify_morphism(
    f: &ModuleMap,
    source: &CrossedGModule,
    target: &CrossedGModule,
) -> Report {
    let mut report = Report::new();
    if f.source_dim != source.dim() || f.target_dim != target.dim() {
        report.fail("shape", vec![], "matrix shape does not match the objects".to_string());
        return report;
    }

    let mut grade = None;
    'grade: for j in 0..f.source_dim {
        for (i, _) in &f.cols[j] {
            if target.grading[*i] != source.grading[j] {
                grade = Some((
                    vec![j, *i],
                    format!(
                        "f(v{j}) has a component of degree {} != {}",
                        target.grading[*i],
                        source.grading[j]
                    ),
                ));
                break 'grade;
            }
        }
    }
    report.check("grading_preserving", grade);

    let mut inter = None;
    'inter: for j in 0..f.source_dim {
        for x in 0..source.group.size {
            let lhs = f.apply(&source.action[j][x]);
            let rhs = target.act(&f.cols[j], x);
            if lhs != rhs {
                inter = Some((vec![j, x], format!("f(v{j} ◁ {x}) != f(v{j}) ◁ {x}")));
                break 'inter;
            }
        }
    }
    report.check("action_intertwining", inter);

    report
}

/// Tensor product object: product grading, componentwise action scaled by
/// the three-phi ratio of the crossed-module proposition.
pub fn tensor_objects(
    v: &CrossedGModule,
    w: &CrossedGModule,
) -> Result<CrossedGModule, CrossedError> {
    if !v.same_setting(w) {
        return Err(CrossedError::Mismatch);
    }
    let g = &v.group;
    let n = g.size;
    let phi = &v.cocycle;
    let mw = w.dim();
    let mut grading = Vec::with_capacity(v.dim() * mw);
    let mut action = Vec::with_capacity(v.dim() * mw);
    for i in 0..v.dim() {
        let dv = v.grading[i];
        for j in 0..mw {
            let dw = w.grading[j];
            grading.push(g.mul(dv, dw));
            let mut row = Vec::with_capacity(n);
            for x in 0..n {
                // phi(x, x^-1|v|x, x^-1|w|x) phi(|v|,|w|,x) / phi(|v|, x, x^-1|w|x)
                let dwx = g.conj(x, dw);
                let ratio = phi
                    .value(x, g.conj(x, dv), dwx)
                    .mul(phi.value(dv, dw, x))?
                    .div(phi.value(dv, x, dwx))?;
                let mut col = Vec::new();
                for (iv, cv) in &v.action[i][x] {
                    for (jw, cw) in &w.action[j][x] {
                        col.push((
                            iv * mw + jw,
                            ratio
                                .mul(cv)
                                .expect("uniform scalar order")
                                .mul(cw)
                                .expect("uniform scalar order"),
                        ));
                    }
                }
                col.sort_by_key(|(k, _)| *k);
                row.push(col);
            }
            action.push(row);
        }
    }
    Ok(CrossedGModule {
        group: v.group.clone(),
        cocycle: v.cocycle.clone(),
        order: v.order,
        grading,
        action,
    })
}

/// The associator (V(x)W)(x)Z -> V(x)(W(x)Z): diagonal on the flat basis
/// with entries phi(|v|,|w|,|z|).
pub fn associator(
    v: &CrossedGModule,
    w: &CrossedGModule,
    z: &CrossedGModule,
) -> ModuleMap {
    diag_assoc(v, w, z, false)
}

/// The inverse associator, with entries phi(|v|,|w|,|z|)^-1.
pub fn associator_inv(
    v: &CrossedGModule,
    w: &CrossedGModule,
    z: &CrossedGModule,
) -> ModuleMap {
    diag_assoc(v, w, z, true)
}

fn diag_assoc(
    v: &CrossedGModule,
    w: &CrossedGModule,
    z: &CrossedGModule,
    invert: bool,
) -> ModuleMap {
    let phi = &v.cocycle;
    let dim = v.dim() * w.dim() * z.dim();
    let mut cols = Vec::with_capacity(dim);
    for i in 0..v.dim() {
        for j in 0..w.dim() {
            for k in 0..z.dim() {
                let mut val = phi
                    .value(v.grading[i], w.grading[j], z.grading[k])
                    .clone();
                if invert {
                    val = val.inv().expect("cocycle values are invertible");
                }
                let flat = (i * w.dim() + j) * z.dim() + k;
                cols.push(vec![(flat, val)]);
            }
        }
    }
    ModuleMap {
        source_dim: dim,
        target_dim: dim,
        order: v.order,
        cols,
    }
}

/// The braiding V(x)W -> W(x)V: Psi(v (x) w) = w (x) v ◁ |w|.
///
/// This is the grading-preserving direction (|w| |w|^-1 |v| |w| = |v||w|)
/// and the one obtained from the stored R-matrix of the double by
/// Psi = sum R2 ▷ w (x) R1 ▷ v.
pub fn braiding(v: &CrossedGModule, w: &CrossedGModule) -> ModuleMap {
    let mv = v.dim();
    let mw = w.dim();
    let mut cols = Vec::with_capacity(mv * mw);
    for i in 0..mv {
        for j in 0..mw {
            let dw = w.grading[j];
            let col: SparseVec = v.action[i][dw]
                .iter()
                .map(|(ii, c)| (j * mv + ii, c.clone()))
                .collect();
            cols.push(col);
        }
    }
    ModuleMap {
        source_dim: mv * mw,
        target_dim: mv * mw,
        order: v.order,
        cols,
    }
}

/// Checks the decorated hexagon (the monoidal compatibility of the
/// braiding on a tensor product) and the associator-decorated braid
/// relation, as exact equalities of composed matrices.
pub fn verify_hexagon(
    v: &CrossedGModule,
    w: &CrossedGModule,
    z: &CrossedGModule,
) -> Report {
    let mut report = Report::new();
    let vw = match tensor_objects(v, w) {
        Ok(t) => t,
        Err(e) => {
            report.fail("tensor_braiding", vec![], e.to_string());
            return report;
        }
    };

    // braiding(V(x)W, Z) = Phi_{Z,V,W} ∘ (Psi_{V,Z} (x) id)
    //   ∘ Phi^{-1}_{V,Z,W} ∘ (id (x) Psi_{W,Z}) ∘ Phi_{V,W,Z}
    let lhs = braiding(&vw, z);
    let id_v = ModuleMap::identity(v.dim(), v.order);
    let id_w = ModuleMap::identity(w.dim(), v.order);
    let route = associator(z, v, w)
        .compose(&ModuleMap::tensor(&braiding(v, z), &id_w))
        .compose(&associator_inv(v, z, w))
        .compose(&ModuleMap::tensor(&id_v, &braiding(w, z)))
        .compose(&associator(v, w, z));
    debug_assert!(route.is_monomial());
    report.check(
        "tensor_braiding",
        map_diff_witness(&lhs, &route, "hexagon route"),
    );

    // braid relation: the two canonical composites (V(x)W)(x)Z -> (Z(x)W)(x)V
    let id_z = ModuleMap::identity(z.dim(), v.order);
    let route_a = ModuleMap::tensor(&braiding(w, z), &id_v)
        .compose(&associator_inv(w, z, v))
        .compose(&ModuleMap::tensor(&id_w, &braiding(v, z)))
        .compose(&associator(w, v, z))
        .compose(&ModuleMap::tensor(&braiding(v, w), &id_z));
    let route_b = associator_inv(z, w, v)
        .compose(&ModuleMap::tensor(&id_z, &braiding(v, w)))
        .compose(&associator(z, v, w))
        .compose(&ModuleMap::tensor(&braiding(v, z), &id_w))
        .compose(&associator_inv(v, z, w))
        .compose(&ModuleMap::tensor(&id_v, &braiding(w, z)))
        .compose(&associator(v, w, z));
    debug_assert!(route_a.is_monomial() && route_b.is_monomial());
    report.check(
        "braid_relation",
        map_diff_witness(&route_a, &route_b, "dodecagon routes"),
    );

    report.check(
        "braiding_invertible",
        if braiding(v, w).is_invertible() && braiding(&vw, z).is_invertible() {
            None
        } else {
            Some((vec![], "a braiding map is singular".to_string()))
        },
    );

    report
}

fn map_diff_witness(a: &ModuleMap, b: &ModuleMap, what: &str) -> Option<(Vec<usize>, String)> {
    if a.source_dim != b.source_dim || a.target_dim != b.target_dim {
        return Some((vec![], format!("{what}: shape mismatch")));
    }
    for j in 0..a.source_dim {
        if a.cols[j] != b.cols[j] {
            return Some((vec![j], format!("{what} differ at source basis {j}")));
        }
    }
    None
}

/// A left module over D^phi(G) given by explicit representing matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftModule {
    pub dim: usize,
    pub order: u64,
    /// `rho[i]` = the matrix of (e_i ▷ ·), column-wise; one entry per
    /// D-basis element.
    pub rho: Vec<Vec<SparseVec>>,
}

impl LeftModule {
    fn apply(&self, i: usize, v: &[(usize, Cyc)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Cyc> = BTreeMap::new();
        for (j, c) in v {
            for (k, ck) in &self.rho[i][*j] {
                let add = c.mul(ck).expect("uniform scalar order");
                let entry = match acc.remove(k) {
                    Some(prev) => prev.add(&add).expect("uniform scalar order"),
                    None => add,
                };
                if !entry.is_zero() {
                    acc.insert(*k, entry);
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Action of a sparse element of D.
    pub fn apply_elem(&self, a: &[(usize, Cyc)], v: &[(usize, Cyc)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Cyc> = BTreeMap::new();
        for (i, ci) in a {
            for (k, ck) in self.apply(*i, v) {
                let add = ci.mul(&ck).expect("uniform scalar order");
                let entry = match acc.remove(&k) {
                    Some(prev) => prev.add(&add).expect("uniform scalar order"),
                    None => add,
                };
                if !entry.is_zero() {
                    acc.insert(k, entry);
                }
            }
        }
        acc.into_iter().collect()
    }
}

/// Checks that the matrices satisfy D's structure constants and send the
/// unit to the identity.
pub fn verify_representation(dd: &DPRInstance, m: &LeftModule) -> Result<(), CrossedError> {
    let d = dd.qhopf.dim();
    if m.rho.len() != d {
        return Err(CrossedError::DimMismatch);
    }
    for i in 0..d {
        for j in 0..d {
            for v in 0..m.dim {
                let lhs = m.apply(i, &m.rho[j][v]);
                // e_i e_j is monomial in D
                let rhs = match dd.qhopf.algebra.mul_basis(i, j).as_slice() {
                    [] => Vec::new(),
                    [(k, c)] => m.rho[*k][v]
                        .iter()
                        .map(|(t, ct)| (*t, c.mul(ct).expect("uniform scalar order")))
                        .collect(),
                    cell => {
                        let mut acc: BTreeMap<usize, Cyc> = BTreeMap::new();
                        for (k, c) in cell {
                            for (t, ct) in &m.rho[*k][v] {
                                let add = c.mul(ct).expect("uniform scalar order");
                                let entry = match acc.remove(t) {
                                    Some(prev) => {
                                        prev.add(&add).expect("uniform scalar order")
                                    }
                                    None => add,
                                };
                                if !entry.is_zero() {
                                    acc.insert(*t, entry);
                                }
                            }
                        }
                        acc.into_iter().collect()
                    }
                };
                if lhs != rhs {
                    return Err(CrossedError::RepresentationLaw(i, j));
                }
            }
        }
    }
    for v in 0..m.dim {
        let unit_act = m.apply_elem(&dd.qhopf.algebra.unit, &[(v, Cyc::one(m.order))]);
        if unit_act != vec![(v, Cyc::one(m.order))] {
            return Err(CrossedError::RepresentationLaw(0, v));
        }
    }
    Ok(())
}

/// Extracts the crossed-module structure from a left D-module: grading from
/// the projections (e (x) delta_s) ▷, action from the embedded group
/// elements.
pub fn module_to_crossed(
    dd: &DPRInstance,
    m: &LeftModule,
) -> Result<CrossedGModule, CrossedError> {
    verify_representation(dd, m)?;
    let g = &dd.group;
    let n = g.size;
    let mut grading = Vec::with_capacity(m.dim);
    for v in 0..m.dim {
        let e_v = vec![(v, Cyc::one(m.order))];
        let mut found = None;
        for s in 0..n {
            let proj = m.apply_elem(&dd.embed_delta(s), &e_v);
            if proj == e_v {
                if found.replace(s).is_some() {
                    return Err(CrossedError::NotHomogeneous(v));
                }
            } else if !proj.is_empty() {
                return Err(CrossedError::NotHomogeneous(v));
            }
        }
        grading.push(found.ok_or(CrossedError::NotHomogeneous(v))?);
    }
    let mut action = Vec::with_capacity(m.dim);
    for v in 0..m.dim {
        let e_v = vec![(v, Cyc::one(m.order))];
        let mut row = Vec::with_capacity(n);
        for x in 0..n {
            row.push(m.apply_elem(&dd.embed_group(x), &e_v));
        }
        action.push(row);
    }
    Ok(CrossedGModule {
        group: g.clone(),
        cocycle: dd.cocycle.clone(),
        order: m.order,
        grading,
        action,
    })
}

/// The inverse transport: (x (x) delta_s) ▷ v = delta_{s,|v|} v ◁ x.
pub fn crossed_to_module(v: &CrossedGModule) -> LeftModule {
    let n = v.group.size;
    let m = v.dim();
    let mut rho = Vec::with_capacity(n * n);
    for x in 0..n {
        for s in 0..n {
            let mut cols = Vec::with_capacity(m);
            for j in 0..m {
                cols.push(if v.grading[j] == s {
                    v.action[j][x].clone()
                } else {
                    Vec::new()
                });
            }
            rho.push(cols);
        }
    }
    LeftModule {
        dim: m,
        order: v.order,
        rho,
    }
}

/// The left regular representation of D^phi(G) itself.
pub fn regular_module(dd: &DPRInstance) -> LeftModule {
    let d = dd.qhopf.dim();
    let mut rho = Vec::with_capacity(d);
    for i in 0..d {
        rho.push(
            (0..d)
                .map(|j| dd.qhopf.algebra.mul_basis(i, j).clone())
                .collect(),
        );
    }
    LeftModule {
        dim: d,
        order: dd.qhopf.order(),
        rho,
    }
}

/// The regular crossed module, obtained by transporting the left regular
/// D^phi(G)-module.
pub fn regular_object(
    group: &FiniteGroup,
    phi: &Cochain3,
) -> Result<CrossedGModule, CrossedError> {
    let dd = crate::dpr::build_dpr(group, phi)
        .map_err(|e| CrossedError::Malformed(e.to_string()))?;
    regular_object_of(&dd)
}

/// Same as [`regular_object`], reusing an already-built instance.
pub fn regular_object_of(dd: &DPRInstance) -> Result<CrossedGModule, CrossedError> {
    module_to_crossed(dd, &regular_module(dd))
}

/// Right multiplications by basis elements of D on the regular module:
/// a generating set of crossed-module endomorphisms, used for naturality
/// checks.
pub fn regular_right_multiplications(dd: &DPRInstance) -> Vec<ModuleMap> {
    let d = dd.qhopf.dim();
    (0..d)
        .map(|b| ModuleMap {
            source_dim: d,
            target_dim: d,
            order: dd.qhopf.order(),
            cols: (0..d)
                .map(|j| dd.qhopf.algebra.mul_basis(j, b).clone())
                .collect(),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// JSON object format

impl CrossedGModule {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group,
            "cocycle": self.cocycle,
            "grading": self.grading,
            "action": self.action.iter().map(|row| {
                row.iter().map(|col| {
                    col.iter().map(|(i, c)| serde_json::json!({"idx": i, "val": c}))
                        .collect::<Vec<_>>()
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: serde_json::Value) -> Result<CrossedGModule, CrossedError> {
        let group = crate::group::load_group_json(&value["group"])
            .map_err(|e| CrossedError::Malformed(e.to_string()))?;
        let values: Vec<Vec<Vec<Cyc>>> =
            serde_json::from_value(value["cocycle"]["values"].clone())
                .map_err(|e| CrossedError::Malformed(e.to_string()))?;
        let mut cocycle = Cochain3::new(&group, values)
            .map_err(|e| CrossedError::Malformed(e.to_string()))?;
        let report = crate::cochain::verify_and_flag(&mut cocycle);
        if !report.all_passed() {
            return Err(CrossedError::Malformed(
                "cocycle in object file fails verification".to_string(),
            ));
        }
        let cocycle = cocycle.normalized_order()?;
        let order = cocycle.scalar_order();
        let grading: Vec<Elem> = serde_json::from_value(value["grading"].clone())
            .map_err(|e| CrossedError::Malformed(e.to_string()))?;

        #[derive(Deserialize)]
        struct Entry {
            idx: usize,
            val: Cyc,
        }
        let raw: Vec<Vec<Vec<Entry>>> = serde_json::from_value(value["action"].clone())
            .map_err(|e| CrossedError::Malformed(e.to_string()))?;
        let m = grading.len();
        if raw.len() != m {
            return Err(CrossedError::Malformed(
                "action table must have one row per basis vector".to_string(),
            ));
        }
        let mut action = Vec::with_capacity(m);
        for row in raw {
            if row.len() != group.size {
                return Err(CrossedError::Malformed(
                    "action row must have one column per group element".to_string(),
                ));
            }
            let mut out_row = Vec::with_capacity(group.size);
            for col in row {
                let mut out: SparseVec = Vec::with_capacity(col.len());
                for e in col {
                    if e.idx >= m {
                        return Err(CrossedError::Malformed(format!(
                            "action index {} out of range",
                            e.idx
                        )));
                    }
                    let c = e.val.embed(order)?;
                    if !c.is_zero() {
                        out.push((e.idx, c));
                    }
                }
                out.sort_by_key(|(k, _)| *k);
                out_row.push(out);
            }
            action.push(out_row);
        }
        for d in &grading {
            if *d >= group.size {
                return Err(CrossedError::Malformed("grading out of range".to_string()));
            }
        }
        Ok(CrossedGModule {
            group,
            cocycle,
            order,
            grading,
            action,
        })
    }
}
