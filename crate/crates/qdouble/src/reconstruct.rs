//! Cross-checks of the general quantum-double relations on the constructed
//! D^phi(G): the straightening relation between the two factors, the
//! quasi-coaction condition, the explicit coproduct formula, and the
//! R-matrix / associator / action identifications.
//!
//! Here H = k^phi(G) with basis {delta_s} and H* = kG with the dual basis
//! {x}, which is group-like (every iterated dual coproduct leg of x equals
//! x, since the dual coproduct is dual to the pointwise product of H).
//! The phi legs appearing in the relations are read off the stored
//! associator tensor of the double, so a corrupted associator is detected
//! here; all products are taken in D through its multiplication table.

use crate::cyclotomic::Cyc;
use crate::dpr::DPRInstance;
use crate::group::Elem;
use crate::qhopf::{tensor_diff_witness, SparseVec, TensorElement};
use crate::report::Report;
use std::collections::BTreeMap;

/// The evaluation pairing between the kG basis and the k(G) basis,
/// together with the two inclusions into D^phi(G).
pub struct PairedBases {
    pub n: usize,
    pub order: u64,
}

impl PairedBases {
    pub fn from_instance(dd: &DPRInstance) -> PairedBases {
        PairedBases {
            n: dd.n(),
            order: dd.qhopf.order(),
        }
    }

    /// ⟨x, delta_s⟩ = delta_{x,s}.
    pub fn pair(&self, x: Elem, s: Elem) -> Cyc {
        if x == s {
            Cyc::one(self.order)
        } else {
            Cyc::zero(self.order)
        }
    }

    /// The pairing matrix is the identity, hence nondegenerate.
    pub fn is_nondegenerate(&self) -> bool {
        // a permutation matrix with nonzero entries; trivially so here, but
        // stated as a scan so the invariant is checked, not assumed
        (0..self.n).all(|x| (0..self.n).filter(|s| !self.pair(x, *s).is_zero()).count() == 1)
    }
}

/// Pulls the n^3 table of scalars out of the associator tensor, requiring
/// every leg to lie in the embedded function algebra (group part e).
fn extract_phi_table(
    dd: &DPRInstance,
) -> Result<Vec<Vec<Vec<Cyc>>>, (Vec<usize>, String)> {
    let n = dd.n();
    let order = dd.qhopf.order();
    let mut table = vec![vec![vec![Cyc::zero(order); n]; n]; n];
    let assoc = &dd.qhopf.associator;
    for (key, c) in &assoc.terms {
        let legs = assoc.decode(*key);
        let mut fun_legs = [0usize; 3];
        for (slot, i) in legs.iter().enumerate() {
            let (y, s) = dd.unindex(*i);
            if y != 0 {
                return Err((
                    legs.clone(),
                    "associator leg lies outside the embedded function algebra".to_string(),
                ));
            }
            fun_legs[slot] = s;
        }
        table[fun_legs[0]][fun_legs[1]][fun_legs[2]] = c.clone();
    }
    Ok(table)
}

/// Entrywise inverse of the extracted table; a zero entry means the
/// associator is not of the invertible diagonal form.
fn invert_phi_table(
    table: &[Vec<Vec<Cyc>>],
) -> Result<Vec<Vec<Vec<Cyc>>>, (Vec<usize>, String)> {
    let n = table.len();
    let mut out = vec![vec![Vec::with_capacity(n); n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                match table[a][b][c].inv() {
                    Ok(v) => out[a][b].push(v),
                    Err(_) => {
                        return Err((
                            vec![a, b, c],
                            "associator entry is zero, no inverse".to_string(),
                        ))
                    }
                }
            }
        }
    }
    Ok(out)
}

fn add_scaled(acc: &mut BTreeMap<usize, Cyc>, vec: &[(usize, Cyc)], scale: &Cyc) {
    for (i, c) in vec {
        let add = scale.mul(c).expect("uniform scalar order");
        let entry = match acc.remove(i) {
            Some(prev) => prev.add(&add).expect("uniform scalar order"),
            None => add,
        };
        if !entry.is_zero() {
            acc.insert(*i, entry);
        }
    }
}

fn vec_diff(lhs: &BTreeMap<usize, Cyc>, rhs: &BTreeMap<usize, Cyc>) -> bool {
    lhs != rhs
}

/// The straightening relation between the kG factor and the k(G) factor:
///
///   f1 . phi-1 . h ⟨f2, phi-2 beta S phi-3⟩
///     = ⟨f1, h11⟩ ⟨f3, phi-2 beta S(phi-3 h2)⟩ h12 . f2 . phi-1
///
/// checked for every pair f = x in kG, h = delta_s in k(G). The dual
/// coproduct legs of f all equal x (group-like); the coproduct of h is the
/// k(G) one, delta_s -> sum over factorizations of s.
pub fn verify_doufh(dd: &DPRInstance) -> Report {
    let mut report = Report::new();
    let g = &dd.group;
    let n = dd.n();
    let alg = &dd.qhopf.algebra;
    let pb = PairedBases::from_instance(dd);
    let phiv = match extract_phi_table(dd) {
        Ok(t) => t,
        Err(w) => {
            report.fail("doufh", w.0, w.1);
            return report;
        }
    };
    let phinv = match invert_phi_table(&phiv) {
        Ok(t) => t,
        Err(w) => {
            report.fail("doufh", w.0, w.1);
            return report;
        }
    };
    // beta and S of H = k^phi(G): beta(t) = phi(t, t^-1, t)^-1, S delta_c
    // = delta_{c^-1}; both read off the extracted table
    let beta: Vec<&Cyc> = (0..n).map(|t| &phinv[t][g.inv(t)][t]).collect();

    let mut witness = None;
    'pairs: for x in 0..n {
        for s in 0..n {
            let mut lhs: BTreeMap<usize, Cyc> = BTreeMap::new();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        // ⟨x, delta_b beta S delta_c⟩ = ⟨x,delta_b⟩ beta(x) ⟨x,delta_{c^-1}⟩
                        if pb.pair(x, b).is_zero() || pb.pair(x, g.inv(c)).is_zero() {
                            continue;
                        }
                        let scale = phinv[a][b][c]
                            .mul(beta[x])
                            .expect("uniform scalar order");
                        let term = alg.mul_vec(
                            &alg.mul_vec(&dd.embed_group(x), &dd.embed_delta(a)),
                            &dd.embed_delta(s),
                        );
                        add_scaled(&mut lhs, &term, &scale);
                    }
                }
            }
            let mut rhs: BTreeMap<usize, Cyc> = BTreeMap::new();
            for u in 0..n {
                // triple coproduct of delta_s: sum over u v w = s
                if pb.pair(x, u).is_zero() {
                    continue; // ⟨f1, h11⟩
                }
                for v in 0..n {
                    let w = g.mul(g.inv(g.mul(u, v)), s);
                    for a in 0..n {
                        for b in 0..n {
                            for c in 0..n {
                                // ⟨x, delta_b beta S(delta_c delta_w)⟩:
                                // delta_c delta_w = [c=w] delta_w and
                                // (S delta_w)(x) = ⟨x, delta_{w^-1}⟩
                                if c != w
                                    || pb.pair(x, b).is_zero()
                                    || pb.pair(x, g.inv(w)).is_zero()
                                {
                                    continue;
                                }
                                let scale = phinv[a][b][c]
                                    .mul(beta[x])
                                    .expect("uniform scalar order");
                                let term = alg.mul_vec(
                                    &alg.mul_vec(&dd.embed_delta(v), &dd.embed_group(x)),
                                    &dd.embed_delta(a),
                                );
                                add_scaled(&mut rhs, &term, &scale);
                            }
                        }
                    }
                }
            }
            if vec_diff(&lhs, &rhs) {
                witness = Some((
                    vec![x, s],
                    format!("straightening fails for f = x{x}, h = delta_{s}"),
                ));
                break 'pairs;
            }
        }
    }
    report.check("doufh", witness);
    report
}

/// The quasi-coaction relation between two dual-basis elements:
///
///   ⟨g1, phi1⟩ ⟨f2, phi3⟩ f1 . phi2 . g2
///     = ⟨g1, phi'1⟩ ⟨f1, phi'2⟩ ⟨g3, phi2⟩ ⟨f3, phi3⟩ phi'3 . (g2 f2) . phi1
///
/// with f = x, g = y group-like and g2 f2 multiplied in the product on kG
/// dual to the coproduct of k(G), i.e. the group product yx.
pub fn verify_doufg(dd: &DPRInstance) -> Report {
    doufg_report(dd, true)
}

fn doufg_report(dd: &DPRInstance, include_phi_prime: bool) -> Report {
    let mut report = Report::new();
    let g = &dd.group;
    let n = dd.n();
    let alg = &dd.qhopf.algebra;
    let pb = PairedBases::from_instance(dd);
    let phiv = match extract_phi_table(dd) {
        Ok(t) => t,
        Err(w) => {
            report.fail("doufg", w.0, w.1);
            return report;
        }
    };

    let one = Cyc::one(dd.qhopf.order());
    let mut witness = None;
    'pairs: for x in 0..n {
        for y in 0..n {
            let mut lhs: BTreeMap<usize, Cyc> = BTreeMap::new();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if pb.pair(y, a).is_zero() || pb.pair(x, c).is_zero() {
                            continue;
                        }
                        let term = alg.mul_vec(
                            &alg.mul_vec(&dd.embed_group(x), &dd.embed_delta(b)),
                            &dd.embed_group(y),
                        );
                        add_scaled(&mut lhs, &term, &phiv[a][b][c]);
                    }
                }
            }
            let mut rhs: BTreeMap<usize, Cyc> = BTreeMap::new();
            for ap in 0..n {
                for bp in 0..n {
                    for cp in 0..n {
                        // ⟨g1, phi'1⟩ ⟨f1, phi'2⟩
                        if pb.pair(y, ap).is_zero() || pb.pair(x, bp).is_zero() {
                            continue;
                        }
                        let w1 = if include_phi_prime {
                            &phiv[ap][bp][cp]
                        } else {
                            &one
                        };
                        if w1.is_zero() {
                            continue;
                        }
                        for a in 0..n {
                            for b in 0..n {
                                for c in 0..n {
                                    // ⟨g3, phi2⟩ ⟨f3, phi3⟩
                                    if pb.pair(y, b).is_zero() || pb.pair(x, c).is_zero() {
                                        continue;
                                    }
                                    let scale =
                                        w1.mul(&phiv[a][b][c]).expect("uniform scalar order");
                                    let term = alg.mul_vec(
                                        &alg.mul_vec(
                                            &dd.embed_delta(cp),
                                            &dd.embed_group(g.mul(y, x)),
                                        ),
                                        &dd.embed_delta(a),
                                    );
                                    add_scaled(&mut rhs, &term, &scale);
                                }
                            }
                        }
                    }
                }
            }
            if vec_diff(&lhs, &rhs) {
                witness = Some((
                    vec![x, y],
                    format!("quasi-coaction relation fails for f = x{x}, g = x{y}"),
                ));
                break 'pairs;
            }
        }
    }
    report.check("doufg", witness);
    report
}

/// The explicit coproduct of the double on both kinds of basis element:
///
///   Delta_D f = ⟨f1,phi'1⟩ ⟨f3,phi-2⟩ ⟨f5,phi3⟩
///               phi'2 . f2 . phi-1 phi1 (x) phi'3 phi-3 . f4 . phi2
///
/// for group-like f = x (clause `doudelta_dual`), and Delta_D h = Delta h
/// for embedded h = delta_s (clause `doudelta_h`).
pub fn verify_doudelta(dd: &DPRInstance) -> Report {
    let mut report = Report::new();
    let g = &dd.group;
    let n = dd.n();
    let dim = dd.qhopf.dim();
    let order = dd.qhopf.order();
    let alg = &dd.qhopf.algebra;
    let phiv = match extract_phi_table(dd) {
        Ok(t) => t,
        Err(w) => {
            report.fail("doudelta_dual", w.0, w.1);
            return report;
        }
    };
    let phinv = match invert_phi_table(&phiv) {
        Ok(t) => t,
        Err(w) => {
            report.fail("doudelta_dual", w.0, w.1);
            return report;
        }
    };

    let mut witness = None;
    'dual: for x in 0..n {
        let mut lhs = TensorElement::zero(2, dim, order);
        for t in 0..n {
            lhs = lhs.add(&dd.qhopf.coproduct[dd.index(x, t)]);
        }
        let mut rhs = TensorElement::zero(2, dim, order);
        // the five dual-coproduct legs of f all equal x; the three scalar
        // pairings fix phi'1 = phi-2 = phi3 = delta_x
        for bp in 0..n {
            let left_bp = alg.mul_vec(&dd.embed_delta(bp), &dd.embed_group(x));
            for a in 0..n {
                let left_a = alg.mul_vec(&left_bp, &dd.embed_delta(a));
                if left_a.is_empty() {
                    continue;
                }
                for d in 0..n {
                    let left = alg.mul_vec(&left_a, &dd.embed_delta(d));
                    if left.is_empty() {
                        continue;
                    }
                    for cp in 0..n {
                        for c in 0..n {
                            let right_cc =
                                alg.mul_vec(&dd.embed_delta(cp), &dd.embed_delta(c));
                            if right_cc.is_empty() {
                                continue;
                            }
                            let right_x = alg.mul_vec(&right_cc, &dd.embed_group(x));
                            for e in 0..n {
                                let right = alg.mul_vec(&right_x, &dd.embed_delta(e));
                                if right.is_empty() {
                                    continue;
                                }
                                let scale = phiv[x][bp][cp]
                                    .mul(&phinv[a][x][c])
                                    .expect("uniform scalar order")
                                    .mul(&phiv[d][e][x])
                                    .expect("uniform scalar order");
                                if scale.is_zero() {
                                    continue;
                                }
                                for (i, ci) in &left {
                                    for (j, cj) in &right {
                                        rhs.add_term(
                                            &[*i, *j],
                                            scale
                                                .mul(ci)
                                                .expect("uniform scalar order")
                                                .mul(cj)
                                                .expect("uniform scalar order"),
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some((mut w, detail)) = tensor_diff_witness(&lhs, &rhs) {
            w.insert(0, x);
            witness = Some((w, format!("Delta_D(x{x}) mismatch: {detail}")));
            break 'dual;
        }
    }
    report.check("doudelta_dual", witness);

    let mut witness = None;
    for s in 0..n {
        let lhs = &dd.qhopf.coproduct[dd.index(0, s)];
        let mut rhs = TensorElement::zero(2, dim, order);
        for u in 0..n {
            rhs.add_term(
                &[dd.index(0, u), dd.index(0, g.mul(g.inv(u), s))],
                Cyc::one(order),
            );
        }
        if let Some((mut w, detail)) = tensor_diff_witness(lhs, &rhs) {
            w.insert(0, s);
            witness = Some((w, format!("Delta_D(delta_{s}) mismatch: {detail}")));
            break;
        }
    }
    report.check("doudelta_h", witness);
    report
}

/// The three structural identifications:
///  - `douR`: R of D equals sum_a (embedded f^a) (x) (embedded e_a);
///  - `douphi`: the associator of D equals the embedded cocycle tensor;
///  - `douact`: on the regular object, (x (x) delta_s) ▷ v =
///    ⟨x, (delta_s ▷ v)^(1)⟩ (delta_s ▷ v)^(2) = delta_{s,|v|} v ◁ x,
///    compared against the regular representation of D itself.
#[allow(non_snake_case)]
pub fn verify_douR_douphi_douact(dd: &DPRInstance) -> Report {
    let mut report = Report::new();
    let n = dd.n();
    let dim = dd.qhopf.dim();
    let order = dd.qhopf.order();

    let mut expected_r = TensorElement::zero(2, dim, order);
    for x in 0..n {
        for (i, ci) in dd.embed_group(x) {
            for (j, cj) in dd.embed_delta(x) {
                expected_r.add_term(&[i, j], ci.mul(&cj).expect("uniform scalar order"));
            }
        }
    }
    match &dd.qhopf.rmatrix {
        Some(r) => report.check("douR", tensor_diff_witness(r, &expected_r)),
        None => report.fail("douR", vec![], "instance carries no R-matrix".to_string()),
    }

    let mut expected_phi = TensorElement::zero(3, dim, order);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                expected_phi.add_term(
                    &[dd.index(0, a), dd.index(0, b), dd.index(0, c)],
                    dd.cocycle.value(a, b, c).clone(),
                );
            }
        }
    }
    report.check(
        "douphi",
        tensor_diff_witness(&dd.qhopf.associator, &expected_phi),
    );

    let witness = match crate::crossedmod::regular_object_of(dd) {
        Ok(r) => {
            let m = crate::crossedmod::regular_module(dd);
            let mut found = None;
            'act: for x in 0..n {
                for s in 0..n {
                    for v in 0..dim {
                        let expected: SparseVec = if r.grading[v] == s {
                            r.action[v][x].clone()
                        } else {
                            Vec::new()
                        };
                        if m.rho[dd.index(x, s)][v] != expected {
                            found = Some((
                                vec![x, s, v],
                                format!(
                                    "(x{x} (x) delta_{s}) ▷ e{v} differs from the graded action"
                                ),
                            ));
                            break 'act;
                        }
                    }
                }
            }
            found
        }
        Err(e) => Some((vec![], format!("regular object unavailable: {e}"))),
    };
    report.check("douact", witness);

    report
}

/// All four relation verifiers merged into one report.
pub fn verify_reconstruct(dd: &DPRInstance) -> Report {
    let mut report = Report::new();
    report.clauses.extend(verify_doufh(dd).clauses);
    report.clauses.extend(verify_doufg(dd).clauses);
    report.clauses.extend(verify_doudelta(dd).clauses);
    report.clauses.extend(verify_douR_douphi_douact(dd).clauses);
    report
}
