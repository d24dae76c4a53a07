//! Exact convex geometry on finitely supported distributions.
//!
//! Membership is decided by a phase-one simplex over the rationals with
//! Bland's rule, so verdicts are exact and the method always terminates.

use super::rat::Rat;
use super::value::{sorted_dedup, Value};

/// Coordinates of a distribution against a sorted coordinate list.
fn coords(d: &Value, axes: &[Value]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); axes.len()];
    if let Some(ts) = d.dist_terms() {
        for (v, w) in ts {
            let i = axes.binary_search(v).expect("axis present");
            out[i] = *w;
        }
    }
    out
}

/// Decides whether `point` is a convex combination of `generators`.
///
/// On success returns coefficients `c_i >= 0` with `sum c_i = 1` and
/// `sum c_i * g_i = point`, in the order of `generators`.
pub fn convex_member(point: &Value, generators: &[Value]) -> Option<Vec<Rat>> {
    if generators.is_empty() {
        return None;
    }
    let mut axes: Vec<Value> = point.support();
    for g in generators {
        axes.extend(g.support());
    }
    let axes = sorted_dedup(axes);
    {
        // Every coordinate of the point must be covered by some generator.
        let covered = sorted_dedup(generators.iter().flat_map(Value::support));
        if point.support().iter().any(|v| covered.binary_search(v).is_err()) {
            return None;
        }
    }
    let n = generators.len();
    let cols: Vec<Vec<Rat>> = generators.iter().map(|g| coords(g, &axes)).collect();
    let p = coords(point, &axes);

    // Rows: one per axis, plus the affine row sum c_i = 1.
    let m = axes.len() + 1;
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (j, pj) in p.iter().enumerate() {
        let mut row: Vec<Rat> = cols.iter().map(|c| c[j]).collect();
        row.push(*pj);
        a.push(row);
    }
    let mut sum_row = vec![Rat::one(); n];
    sum_row.push(Rat::one());
    a.push(sum_row);

    phase_one(a, n)
}

/// Phase-one simplex for `A x = b, x >= 0` with `b >= 0`. Each row of `a`
/// holds the `n` coefficients followed by the right-hand side. Artificial
/// variables take indices `n..n+m`.
fn phase_one(a: Vec<Vec<Rat>>, n: usize) -> Option<Vec<Rat>> {
    let m = a.len();
    let width = n + m;
    let mut t: Vec<Vec<Rat>> = a
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row[..n].to_vec();
            r.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
            r.push(row[n]);
            r
        })
        .collect();
    let mut basis: Vec<usize> = (n..width).collect();
    // Objective row: reduced gains for the sum of artificials.
    let mut obj: Vec<Rat> = (0..=width)
        .map(|j| if (n..width).contains(&j) { Rat::zero() } else { t.iter().map(|r| r[j]).sum() })
        .collect();

    while let Some(enter) = (0..width).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = row[width] / row[enter];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr || (ratio == lr && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        let (r, _) = leave?; // unbounded cannot happen in phase one
        let piv = t[r][enter];
        for x in t[r].iter_mut() {
            *x = *x / piv;
        }
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter];
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = *x - f * *p;
                }
            }
        }
        let f = obj[enter];
        for (x, p) in obj.iter_mut().zip(&prow) {
            *x = *x - f * *p;
        }
        basis[r] = enter;
    }

    if !obj[width].is_zero() {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width];
        }
    }
    Some(x)
}

/// Minimal generator set of the convex hull: the vertices, in canonical
/// order. Non-distribution inputs are kept as they are.
pub fn convex_canonical(generators: &[Value]) -> Vec<Value> {
    let pts = sorted_dedup(generators.iter().cloned());
    if pts.len() <= 1 {
        return pts;
    }
    let mut kept = Vec::with_capacity(pts.len());
    for (i, p) in pts.iter().enumerate() {
        let others: Vec<Value> =
            pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
        if convex_member(p, &others).is_none() {
            kept.push(p.clone());
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(terms: &[(u32, i128, i128)]) -> Value {
        Value::dist(terms.iter().map(|&(i, n, q)| (Value::Base(i), Rat::new(n, q))))
    }

    fn combo(coeffs: &[Rat], gens: &[Value]) -> Value {
        Value::dist(gens.iter().zip(coeffs).flat_map(|(g, c)| {
            g.dist_terms().unwrap().iter().map(move |(v, w)| (v.clone(), *w * *c)).collect::<Vec<_>>()
        }))
    }

    #[test]
    fn barycenter() {
        let gens = [d(&[(0, 1, 1)]), d(&[(1, 1, 1)])];
        let c = convex_member(&d(&[(0, 1, 2), (1, 1, 2)]), &gens).unwrap();
        assert_eq!(c, vec![Rat::new(1, 2), Rat::new(1, 2)]);
    }

    #[test]
    fn support_mismatch() {
        let gens = [d(&[(0, 1, 1)]), d(&[(1, 1, 1)])];
        assert!(convex_member(&d(&[(2, 1, 1)]), &gens).is_none());
        assert!(convex_member(&d(&[(2, 1, 1)]), &[]).is_none());
    }

    #[test]
    fn two_by_two_system() {
        // 1/4 a + 3/4 b = 3/4 (1/3 a + 2/3 b) + 1/4 (1 b)
        let gens = [d(&[(0, 1, 3), (1, 2, 3)]), d(&[(1, 1, 1)])];
        let p = d(&[(0, 1, 4), (1, 3, 4)]);
        let c = convex_member(&p, &gens).unwrap();
        assert_eq!(c, vec![Rat::new(3, 4), Rat::new(1, 4)]);
        assert_eq!(combo(&c, &gens), p);
    }

    #[test]
    fn canonical_drops_interior_points() {
        let a = d(&[(0, 1, 1)]);
        let b = d(&[(1, 1, 1)]);
        let mid = d(&[(0, 1, 2), (1, 1, 2)]);
        assert_eq!(convex_canonical(&[a.clone(), b.clone(), mid]), vec![a.clone(), b.clone()]);
        assert_eq!(convex_canonical(std::slice::from_ref(&a)), vec![a]);
        let p = d(&[(0, 1, 3), (1, 2, 3)]);
        let q = d(&[(0, 2, 3), (1, 1, 3)]);
        let mid = d(&[(0, 1, 2), (1, 1, 2)]);
        let mut expect = vec![p.clone(), q.clone()];
        expect.sort();
        assert_eq!(convex_canonical(&[p, q, mid]), expect);
    }

    #[test]
    fn canonical_in_the_plane() {
        // The three vertices of the simplex over {a,b,c} plus the centroid.
        let vs: Vec<Value> = (0..3).map(|i| d(&[(i, 1, 1)])).collect();
        let mut gens = vs.clone();
        gens.push(d(&[(0, 1, 3), (1, 1, 3), (2, 1, 3)]));
        gens.push(d(&[(0, 1, 2), (2, 1, 2)]));
        assert_eq!(convex_canonical(&gens), vs);
    }
}
