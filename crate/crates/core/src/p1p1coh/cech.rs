//! Brute-force Čech cohomology of `O(a, b)` on `P¹×P¹` from the tensor product of the
//! two-chart complexes `C⁰ = O(U₀) ⊕ O(U₁) → C¹ = O(U₀₁)`, `d(s₀, s₁) = s₁ − s₀`,
//! weight by weight in the torus grading. Used as an oracle for the window model.

use crate::exactnum::{BiPoly, Matrix, Scalar};

/// One factor at a fixed weight: which of `e₀ ∈ O(U₀)`, `e₁ ∈ O(U₁)` carry the monomial.
#[derive(Clone, Copy)]
struct Factor {
    on0: bool,
    on1: bool,
}

impl Factor {
    fn new(i: i64, a: i64) -> Self {
        Factor { on0: i >= 0, on1: i <= a }
    }

    /// Basis of `C⁰` as a list of chart indices.
    fn c0(&self) -> Vec<usize> {
        let mut v = Vec::new();
        if self.on0 {
            v.push(0);
        }
        if self.on1 {
            v.push(1);
        }
        v
    }

    fn d(&self) -> Vec<i64> {
        self.c0().iter().map(|&k| if k == 0 { -1 } else { 1 }).collect()
    }
}

/// Basis labels of the total complex: `(deg_x, idx_x, deg_y, idx_y)`.
type Label = (usize, usize, usize, usize);

struct Weight {
    labels: [Vec<Label>; 3],
    d: [Matrix<crate::exactnum::GaussianRational>; 2],
}

fn weight_complex(fx: Factor, fy: Factor) -> Weight {
    use crate::exactnum::GaussianRational as G;
    let (cx, cy) = (fx.c0(), fy.c0());
    let mut l0 = Vec::new();
    for &i in &cx {
        for &j in &cy {
            l0.push((0, i, 0, j));
        }
    }
    let mut l1 = Vec::new();
    for &i in &cx {
        l1.push((0, i, 1, 0));
    }
    for &j in &cy {
        l1.push((1, 0, 0, j));
    }
    let l2 = vec![(1, 0, 1, 0)];
    let (dx, dy) = (fx.d(), fy.d());
    let pos = |v: &Vec<Label>, l: Label| v.iter().position(|&x| x == l);
    // d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy
    let mut d0 = Matrix::<G>::zeros(l1.len(), l0.len());
    for (c, &(_, i, _, j)) in l0.iter().enumerate() {
        let ix = cx.iter().position(|&k| k == i).unwrap();
        let jy = cy.iter().position(|&k| k == j).unwrap();
        let r = pos(&l1, (1, 0, 0, j)).unwrap();
        d0[(r, c)] = d0[(r, c)].clone() + G::from(dx[ix]);
        let r = pos(&l1, (0, i, 1, 0)).unwrap();
        d0[(r, c)] = d0[(r, c)].clone() + G::from(dy[jy]);
    }
    let mut d1 = Matrix::<G>::zeros(1, l1.len());
    for (c, &(ex, i, _, j)) in l1.iter().enumerate() {
        if ex == 0 {
            let ix = cx.iter().position(|&k| k == i).unwrap();
            d1[(0, c)] = G::from(dx[ix]);
        } else {
            let jy = cy.iter().position(|&k| k == j).unwrap();
            d1[(0, c)] = G::from(-dy[jy]);
        }
    }
    Weight { labels: [l0, l1, l2], d: [d0, d1] }
}

fn box_range(a: i64) -> std::ops::RangeInclusive<i64> {
    -a.abs() - 2..=a.abs() + 2
}

fn weight_dims(w: &Weight) -> [usize; 3] {
    let r0 = w.d[0].rank();
    let r1 = w.d[1].rank();
    [w.labels[0].len() - r0, w.labels[1].len() - r0 - r1, w.labels[2].len() - r1]
}

/// `(h⁰, h¹, h²)` of `O(a, b)` by ranks of the Čech differentials.
pub fn cech_h(a: i64, b: i64) -> (usize, usize, usize) {
    let mut h = [0; 3];
    for i in box_range(a) {
        for j in box_range(b) {
            let w = weight_complex(Factor::new(i, a), Factor::new(j, b));
            for (k, d) in weight_dims(&w).into_iter().enumerate() {
                h[k] += d;
            }
        }
    }
    (h[0], h[1], h[2])
}

/// Cocycle of the class at weight `(i, j)`: `(e₀ + e₁)` on a factor in `H⁰`, `e₀₁` in `H¹`.
fn representative(w: &Weight, deg: usize, fx: Factor, fy: Factor) -> Option<Vec<i64>> {
    let both = |f: Factor| f.on0 && f.on1;
    let neither = |f: Factor| !f.on0 && !f.on1;
    let (gx, gy) = (both(fx), both(fy));
    let (hx, hy) = (neither(fx), neither(fy));
    let want: Vec<(usize, usize)> = match deg {
        0 if gx && gy => vec![(0, 0)],
        1 if gx && hy => vec![(0, 1)],
        1 if hx && gy => vec![(1, 0)],
        2 if hx && hy => vec![(1, 1)],
        _ => return None,
    };
    let (ex, ey) = want[0];
    Some(w.labels[deg].iter().map(|&(dx, _, dy, _)| i64::from(dx == ex && dy == ey)).collect())
}

/// Classes of `H^deg(O(a, b))` indexed by weight, in the order of the window model's basis.
pub fn cech_classes(a: i64, b: i64, deg: usize) -> Vec<(i64, i64)> {
    let basis = super::basis::CohBasis::new(a, b, deg);
    basis.monomials
}

/// Matrix of multiplication by `f` on `H^deg`, computed on cocycles and reduced modulo
/// coboundaries weight by weight; bases are the weight classes of [`cech_classes`].
pub fn cech_mult<S: Scalar>(f: &BiPoly<S>, src: (i64, i64), dst: (i64, i64), deg: usize) -> Matrix<S> {
    let sc = cech_classes(src.0, src.1, deg);
    let dc = cech_classes(dst.0, dst.1, deg);
    let mut out = Matrix::<S>::zeros(dc.len(), sc.len());
    for (c, &(i, j)) in sc.iter().enumerate() {
        let (fx, fy) = (Factor::new(i, src.0), Factor::new(j, src.1));
        let w = weight_complex(fx, fy);
        assert_eq!(weight_dims(&w)[deg], 1, "one class per weight");
        let rep = representative(&w, deg, fx, fy).expect("source class is a weight class");
        assert!(is_cocycle(&w, deg, &rep), "representative must be closed");
        for (s, t, coef) in f.terms() {
            let (ti, tj) = (i + s as i64, j + t as i64);
            let (gx, gy) = (Factor::new(ti, dst.0), Factor::new(tj, dst.1));
            let tw = weight_complex(gx, gy);
            // the product cochain: same chart labels, each still carrying the monomial
            let mut z = vec![0i64; tw.labels[deg].len()];
            for (k, l) in w.labels[deg].iter().enumerate() {
                if rep[k] != 0 {
                    let p = tw.labels[deg].iter().position(|x| x == l).expect("restriction maps charts into charts");
                    z[p] += rep[k];
                }
            }
            if let Some(coeff) = class_coefficient(&tw, deg, gx, gy, &z) {
                assert_eq!(weight_dims(&tw)[deg], 1, "one class per weight");
                let r = dc.iter().position(|&x| x == (ti, tj)).expect("weight class is in the target basis");
                out[(r, c)] = out[(r, c)].clone() + coef.mul_by(&S::from_gaussian(&coeff));
            }
        }
    }
    out
}

fn is_cocycle(w: &Weight, deg: usize, z: &[i64]) -> bool {
    if deg == 2 {
        return true;
    }
    let v: Vec<_> = z.iter().map(|&x| crate::exactnum::GaussianRational::from(x)).collect();
    w.d[deg].mul_vec(&v).iter().all(num_traits::Zero::is_zero)
}

/// Coefficient `c` with `z − c·rep ∈ im d`, or `None` when the weight carries no class.
fn class_coefficient(w: &Weight, deg: usize, fx: Factor, fy: Factor, z: &[i64]) -> Option<crate::exactnum::GaussianRational> {
    use crate::exactnum::GaussianRational as G;
    let rep = representative(w, deg, fx, fy)?;
    let len = w.labels[deg].len();
    let mut cols: Vec<Vec<G>> = vec![rep.iter().map(|&x| G::from(x)).collect()];
    if deg > 0 {
        cols.extend(w.d[deg - 1].columns());
    }
    let a = Matrix::from_columns(len, &cols);
    let aug = a.hstack(&Matrix::from_columns(len, &[z.iter().map(|&x| G::from(x)).collect()]));
    assert_eq!(aug.rank(), a.rank(), "product of cocycles must be a cocycle");
    let rr = aug.rref(0.0);
    // rep is independent of the coboundaries, so it is the first pivot column
    let row = rr.pivots.iter().position(|&p| p == 0)?;
    Some(rr.matrix[(row, cols.len())].clone())
}

#[cfg(test)]
mod tests {
    use super::super::basis::{h_line, mult_poly, CohBasis};
    use super::*;
    use crate::exactnum::GaussianRational as G;

    #[test]
    fn dimensions_match_kunneth() {
        for a in -4..=4 {
            for b in -4..=4 {
                assert_eq!(cech_h(a, b), h_line(a, b), "O({a},{b})");
            }
        }
    }

    #[test]
    fn multiplication_matches_window_model() {
        let polys = [
            BiPoly::zeta(),
            BiPoly::eta(),
            BiPoly::linear_eta(G::from(2), G::from_ints(1, -3)),
            BiPoly::from_fn(1, 1, |i, j| G::from((2 * i + j + 1) as i64)),
        ];
        for f in &polys {
            let (p, q) = f.bidegree();
            for a in -4..=2 {
                for b in -4..=2 {
                    let dst = (a + p as i64, b + q as i64);
                    for deg in 0..3 {
                        let window = mult_poly(f, &CohBasis::new(a, b, deg), &CohBasis::new(dst.0, dst.1, deg));
                        assert_eq!(cech_mult(f, (a, b), dst, deg), window, "{f:?} on H^{deg}(O({a},{b}))");
                    }
                }
            }
        }
    }
}
