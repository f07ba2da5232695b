//! `dim Ext¹(M, N)` without resolutions: derivations `A -> Hom_k(M, N)`
//! modulo inner ones. A derivation `δ` is exactly the off-diagonal block
//! of an action `[[ρ_N, δ], [0, ρ_M]]` on `N ⊕ M`.
//!
//! Every derivation is cohomologous to one vanishing on the idempotents,
//! so unknowns are blocks `δ(p): e_s M -> e_t N` on a basis `p` of each
//! Peirce corner `e_t A e_s`. The Leibniz rule is imposed on pairs
//! (generator, basis element), which suffices because the generators and
//! idempotents generate `A`.

use super::FDModule;
use crate::error::Result;
use crate::linalg::{vector, Matrix, Subspace, Vector};

pub fn ext1_cocycle_oracle(m: &FDModule, n: &FDModule) -> Result<usize> {
    m.same_algebra(n)?;
    let a = m.algebra();
    let f = a.field();
    let k = a.idempotents().len();
    let space = |x: &FDModule, j: usize| {
        let p = x.act(&a.idempotents()[j]);
        let s = Subspace::column_space(&p);
        let proj = s.coord_matrix().mul(&p);
        (s, proj)
    };
    let ms: Vec<(Subspace, Matrix)> = (0..k).map(|j| space(m, j)).collect();
    let ns: Vec<(Subspace, Matrix)> = (0..k).map(|j| space(n, j)).collect();
    // Peirce basis.
    let mut peirce: Vec<(usize, usize, Vector)> = Vec::new();
    for t in 0..k {
        for s in 0..k {
            for b in a.corner(t, s).basis() {
                peirce.push((t, s, b.clone()));
            }
        }
    }
    let pmat = Matrix::from_columns(f, a.dim(), &peirce.iter().map(|p| p.2.clone()).collect::<Vec<_>>());
    let pinv = pmat.inverse().expect("Peirce corners span the algebra");
    let dm = |j: usize| ms[j].0.dim();
    let dn = |j: usize| ns[j].0.dim();
    let mut offsets = Vec::new();
    let mut total = 0;
    for (t, s, _) in &peirce {
        offsets.push(total);
        total += dn(*t) * dm(*s);
    }
    if total == 0 {
        return Ok(0);
    }
    // Entry (r, c) of the block for Peirce element l.
    let var = |l: usize, r: usize, c: usize| offsets[l] + r * dm(peirce[l].1) + c;
    let block = |x: &FDModule, sp: &[(Subspace, Matrix)], el: &Vector, t: usize, s: usize| -> Matrix {
        sp[t].1.mul(&x.act(el)).mul(&sp[s].0.basis_matrix())
    };

    let mut rows: Vec<Vector> = Vec::new();
    // δ(e_j) = 0.
    for (j, e) in a.idempotents().iter().enumerate() {
        let c = pinv.mul_vec(e);
        for r in 0..dn(j) {
            for col in 0..dm(j) {
                let mut row = vector::zeros(f, total);
                for (l, cl) in c.iter().enumerate() {
                    if !cl.is_zero() {
                        row[var(l, r, col)] = cl.clone();
                    }
                }
                rows.push(row);
            }
        }
    }
    // δ(g p) = ρ_N(g) δ(p) + δ(g) ρ_M(p).
    for g in a.generators() {
        let (t, s) = (g.target, g.source);
        let gc = pinv.mul_vec(&g.element);
        let gn = block(n, &ns, &g.element, t, s);
        for (kk, (tk, sk, p)) in peirce.iter().enumerate() {
            if *tk != s {
                continue;
            }
            let gp = pinv.mul_vec(&a.mul(&g.element, p));
            let pm = block(m, &ms, p, s, *sk);
            for r in 0..dn(t) {
                for c in 0..dm(*sk) {
                    let mut row = vector::zeros(f, total);
                    for (l, cl) in gp.iter().enumerate() {
                        if !cl.is_zero() {
                            let i = var(l, r, c);
                            row[i] = &row[i] + cl;
                        }
                    }
                    for q in 0..dn(s) {
                        let v = gn.get(r, q);
                        if !v.is_zero() {
                            let i = var(kk, q, c);
                            row[i] = &row[i] - v;
                        }
                    }
                    for (l, cl) in gc.iter().enumerate() {
                        if cl.is_zero() {
                            continue;
                        }
                        for q in 0..dm(s) {
                            let v = pm.get(q, c);
                            if !v.is_zero() {
                                let i = var(l, r, q);
                                row[i] = &row[i] - &(cl * v);
                            }
                        }
                    }
                    if !vector::is_zero(&row) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let der = total - Matrix::from_rows(f, total, rows).rank();

    // Inner derivations from φ = ⊕ Y_j: e_j M -> e_j N.
    let mut cols = Vec::new();
    for j in 0..k {
        for r in 0..dn(j) {
            for c in 0..dm(j) {
                // ad φ(p) = ρ_N(p) φ - φ ρ_M(p) for φ = E_rc in block j.
                let mut v = vector::zeros(f, total);
                for (l, (tl, sl, p)) in peirce.iter().enumerate() {
                    if *sl == j {
                        let pn = block(n, &ns, p, *tl, j);
                        for rr in 0..dn(*tl) {
                            let val = pn.get(rr, r);
                            if !val.is_zero() {
                                let i = var(l, rr, c);
                                v[i] = &v[i] + val;
                            }
                        }
                    }
                    if *tl == j {
                        let pm = block(m, &ms, p, j, *sl);
                        for cc in 0..dm(*sl) {
                            let val = pm.get(c, cc);
                            if !val.is_zero() {
                                let i = var(l, r, cc);
                                v[i] = &v[i] - val;
                            }
                        }
                    }
                }
                cols.push(v);
            }
        }
    }
    let inner = if cols.is_empty() { 0 } else { Matrix::from_columns(f, total, &cols).rank() };
    Ok(der - inner)
}
