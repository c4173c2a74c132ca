//! Concrete constructions: sl(n,R) and so(p,q) from matrix realizations,
//! the split g2 from binary cubics with m = sl(2,R).

use super::{Algebra, Family, GradedLieAlgebra};
use crate::exactmath::{ExactMatrix, Scalar, Solver};

/// Adapted basis data for a matrix realization.
struct MatrixBasis {
    n: usize,
    f: ExactMatrix,
    h: ExactMatrix,
    e: ExactMatrix,
    v: Vec<(String, ExactMatrix)>,
    m: Vec<(String, ExactMatrix)>,
}

fn comm(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.matmul(b).sub(&b.matmul(a))
}

fn flatten(m: &ExactMatrix) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.push(m.get(r, c).clone());
        }
    }
    out
}

fn algebra_from_matrices(family: Family, mb: MatrixBasis) -> Algebra {
    let nv = mb.v.len();
    let nm = mb.m.len();
    let dim = 3 + 2 * nv + nm;
    let mut names: Vec<String> = Vec::with_capacity(dim);
    let mut grades: Vec<i32> = Vec::with_capacity(dim);
    let mut mats: Vec<ExactMatrix> = Vec::with_capacity(dim);
    names.push("F".into());
    grades.push(-2);
    mats.push(mb.f.clone());
    let v_idx: Vec<usize> = (1..=nv).collect();
    for (name, m) in &mb.v {
        names.push(name.clone());
        grades.push(-1);
        mats.push(m.clone());
    }
    let idx_h = 1 + nv;
    names.push("H".into());
    grades.push(0);
    mats.push(mb.h.clone());
    let m_idx: Vec<usize> = (idx_h + 1..idx_h + 1 + nm).collect();
    for (name, m) in &mb.m {
        names.push(name.clone());
        grades.push(0);
        mats.push(m.clone());
    }
    let vbar_idx: Vec<usize> = (idx_h + 1 + nm..idx_h + 1 + nm + nv).collect();
    for (name, m) in &mb.v {
        names.push(format!("{name}~"));
        grades.push(1);
        mats.push(comm(m, &mb.e));
    }
    let idx_e = dim - 1;
    names.push("E".into());
    grades.push(2);
    mats.push(mb.e.clone());
    let idx_f = 0;

    // Expansion of arbitrary matrices in the basis: pick an independent set
    // of matrix coordinates once, then solve against the square submatrix.
    let n2 = mb.n * mb.n;
    let coord_rows = ExactMatrix::from_fn(dim, n2, |i, c| flatten(&mats[i])[c].clone());
    let (_, pivots) = coord_rows.rref();
    assert_eq!(pivots.len(), dim, "adapted basis is linearly dependent");
    let square = ExactMatrix::from_fn(dim, dim, |r, c| coord_rows.get(c, pivots[r]).clone());
    let solver = Solver::new(&square).expect("expansion matrix singular");
    let expand = |m: &ExactMatrix| -> Vec<(usize, Scalar)> {
        let fm = flatten(m);
        let b: Vec<Scalar> = pivots.iter().map(|&p| fm[p].clone()).collect();
        let x = solver.solve(&b);
        // Verify the expansion reproduces the matrix exactly.
        let mut recon = ExactMatrix::zeros(mb.n, mb.n);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                recon = recon.add(&mats[i].scale(c));
            }
        }
        assert!(recon.sub(m).is_zero(), "element not in the algebra span");
        x.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    };

    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let sp = expand(&comm(&mats[i], &mats[j]));
            table[j][i] = sp
                .iter()
                .map(|(k, c)| (*k, -c))
                .collect::<Vec<(usize, Scalar)>>();
            table[i][j] = sp;
        }
    }

    GradedLieAlgebra::from_table(
        family, names, grades, table, idx_f, idx_h, idx_e, v_idx, vbar_idx, m_idx,
    )
}

/// sl(n,R): E,F,H in the corner blocks, V identified with pairs (x,y) of
/// vectors of length n-2 sitting in the lower-left border.
pub(super) fn build_sl(n: usize) -> Algebra {
    assert!(n >= 3, "sl(n) needs n >= 3");
    let unit = |r: usize, c: usize| {
        let mut m = ExactMatrix::zeros(n, n);
        m.set(r, c, Scalar::one());
        m
    };
    let e = unit(0, n - 1);
    let f = unit(n - 1, 0);
    let mut h = ExactMatrix::zeros(n, n);
    h.set(0, 0, Scalar::one());
    h.set(n - 1, n - 1, Scalar::from_int(-1));

    let mut v = Vec::new();
    for i in 0..n - 2 {
        v.push((format!("x{}", i + 1), unit(i + 1, 0)));
    }
    for j in 0..n - 2 {
        v.push((format!("y{}", j + 1), unit(n - 1, j + 1)));
    }

    let mut m_basis = Vec::new();
    // One-dimensional center of m: diag(n-2, -2, ..., -2, n-2).
    let mut t0 = ExactMatrix::zeros(n, n);
    t0.set(0, 0, Scalar::from_int(n as i64 - 2));
    t0.set(n - 1, n - 1, Scalar::from_int(n as i64 - 2));
    for k in 1..n - 1 {
        t0.set(k, k, Scalar::from_int(-2));
    }
    m_basis.push(("Z".to_string(), t0));
    // sl(n-2) in the middle block.
    for a in 1..n - 1 {
        for b in 1..n - 1 {
            if a != b {
                m_basis.push((format!("m{a}{b}"), unit(a, b)));
            }
        }
    }
    for a in 1..n - 2 {
        let mut d = ExactMatrix::zeros(n, n);
        d.set(a, a, Scalar::one());
        d.set(a + 1, a + 1, Scalar::from_int(-1));
        m_basis.push((format!("md{a}"), d));
    }

    algebra_from_matrices(
        Family::Sl(n),
        MatrixBasis {
            n,
            f,
            h,
            e,
            v,
            m: m_basis,
        },
    )
}

/// so(p,q) for the diagonal form diag(1_p, -1_q), index layout
/// (2 | p-2 | q-2 | 2) with the grading element in the corner blocks.
pub(super) fn build_so(p: usize, q: usize) -> Algebra {
    assert!(p >= q && q >= 3, "so(p,q) needs p >= q >= 3");
    let n = p + q;
    let eps = |i: usize| -> i64 {
        if i < p {
            1
        } else {
            -1
        }
    };
    // Matrix index layout: 0,1 are the first two p-indices; 2..p the rest of
    // the p-block; p..n-2 the inner q-block; n-2, n-1 the last two q-indices.
    // In terms of the defining form these are indices (0,1), (2..p),
    // (p..n-2) and (n-2,n-1) with signs +,+,+...,-...,-,-.
    let idx_sign = |i: usize| -> i64 {
        match i {
            0 | 1 => 1,
            _ if i < p => 1,
            _ if i < n - 2 => -1,
            _ => -1,
        }
    };
    let _ = eps;
    // Generator with X[a][b] = v, filled to lie in so(p,q).
    let gen = |a: usize, b: usize, v: Scalar| -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        let s = if idx_sign(a) * idx_sign(b) == 1 {
            -&v
        } else {
            v.clone()
        };
        m.set(a, b, v);
        m.set(b, a, s);
        m
    };

    let half = Scalar::rat(1, 2);
    // E and F: J-blocks in the four corner positions.
    let mut e = ExactMatrix::zeros(n, n);
    let mut f = ExactMatrix::zeros(n, n);
    let jval = [(0usize, 1usize, 1i64), (1, 0, -1)];
    for &(r, c, s) in &jval {
        let v = Scalar::rat(s, 2);
        // E = 1/2 (J in (r1,r1), -J in (r1,r4), J in (r4,r1), -J in (r4,r4))
        e.set(r, c, v.clone());
        e.set(r, n - 2 + c, -&v);
        e.set(n - 2 + r, c, v.clone());
        e.set(n - 2 + r, n - 2 + c, -&v);
        // F = -1/2 (J, J; -J, -J)
        f.set(r, c, -&v);
        f.set(r, n - 2 + c, -&v);
        f.set(n - 2 + r, c, v.clone());
        f.set(n - 2 + r, n - 2 + c, v);
    }
    let _ = half;
    let mut h = ExactMatrix::zeros(n, n);
    for r in 0..2 {
        h.set(r, n - 2 + r, Scalar::one());
        h.set(n - 2 + r, r, Scalar::one());
    }

    // g_{-1} parameterized by (V, W), V in R^{2 x (p-2)} with rows v1, v2,
    // W in R^{(q-2) x 2} with columns w1, w2. The sign sigma distinguishes
    // the two displays for g_{+1}/g_{-1}; it is fixed below by requiring
    // [H, X] = -X.
    let embed_vw = |vmat: &ExactMatrix, wmat: &ExactMatrix, sigma: i64| -> ExactMatrix {
        let sg = Scalar::from_int(sigma);
        let mut m = ExactMatrix::zeros(n, n);
        for r in 0..2 {
            for c in 0..p - 2 {
                let x = vmat.get(r, c);
                // (r1, r2) block: V
                m.set(r, 2 + c, x.clone());
                // (r2, r1): -V^T
                m.set(2 + c, r, -x);
                // (r2, r4): sigma V^T
                m.set(2 + c, n - 2 + r, &sg * x);
                // (r4, r2): sigma V
                m.set(n - 2 + r, 2 + c, &sg * x);
            }
        }
        for r in 0..q - 2 {
            for c in 0..2 {
                let x = wmat.get(r, c);
                // (r1, r3): -sigma W^T
                m.set(c, p + r, -&(&sg * x));
                // (r3, r1): -sigma W
                m.set(p + r, c, -&(&sg * x));
                // (r3, r4): W
                m.set(p + r, n - 2 + c, x.clone());
                // (r4, r3): -W^T
                m.set(n - 2 + c, p + r, -x);
            }
        }
        m
    };
    // Determine the grade -1 sign.
    let probe = {
        let mut vm = ExactMatrix::zeros(2, p - 2);
        vm.set(0, 0, Scalar::one());
        embed_vw(&vm, &ExactMatrix::zeros(q - 2, 2), 1)
    };
    let hp = comm(&h, &probe);
    let sigma = if hp.sub(&probe.neg()).is_zero() {
        1
    } else {
        let alt = {
            let mut vm = ExactMatrix::zeros(2, p - 2);
            vm.set(0, 0, Scalar::one());
            embed_vw(&vm, &ExactMatrix::zeros(q - 2, 2), -1)
        };
        assert!(comm(&h, &alt).sub(&alt.neg()).is_zero());
        -1
    };

    let mut v = Vec::new();
    for row in 0..2 {
        for i in 0..p - 2 {
            let mut vm = ExactMatrix::zeros(2, p - 2);
            vm.set(row, i, Scalar::one());
            v.push((
                format!("v{}_{}", row + 1, i + 1),
                embed_vw(&vm, &ExactMatrix::zeros(q - 2, 2), sigma),
            ));
        }
    }
    for col in 0..2 {
        for i in 0..q - 2 {
            let mut wm = ExactMatrix::zeros(q - 2, 2);
            wm.set(i, col, Scalar::one());
            v.push((
                format!("w{}_{}", col + 1, i + 1),
                embed_vw(&ExactMatrix::zeros(2, p - 2), &wm, sigma),
            ));
        }
    }

    // m: the sl(2,R) ideal in the corner blocks plus so(p-2,q-2) inside.
    let sl2_image = |a: i64, b: i64, c: i64| -> ExactMatrix {
        let mut m = ExactMatrix::zeros(n, n);
        let av = Scalar::from_int(a);
        let bm = Scalar::rat(b - c, 2);
        let bp = Scalar::rat(b + c, 2);
        let r4 = n - 2;
        m.set(0, 1, bm.clone());
        m.set(1, 0, -&bm);
        m.set(0, r4, av.clone());
        m.set(0, r4 + 1, bp.clone());
        m.set(1, r4, bp.clone());
        m.set(1, r4 + 1, -&av);
        m.set(r4, 0, av.clone());
        m.set(r4, 1, bp.clone());
        m.set(r4, r4 + 1, bm.clone());
        m.set(r4 + 1, 0, bp.clone());
        m.set(r4 + 1, 1, -&av);
        m.set(r4 + 1, r4, -&bm);
        m
    };
    let mut m_basis = vec![
        ("s_h".to_string(), sl2_image(1, 0, 0)),
        ("s_e".to_string(), sl2_image(0, 1, 0)),
        ("s_f".to_string(), sl2_image(0, 0, 1)),
    ];
    for a in 2..n - 2 {
        for b in a + 1..n - 2 {
            m_basis.push((format!("t{a}_{b}"), gen(a, b, Scalar::one())));
        }
    }

    algebra_from_matrices(
        Family::So(p, q),
        MatrixBasis {
            n,
            f,
            h,
            e,
            v,
            m: m_basis,
        },
    )
}

/// The split real form of g2, built on V = binary cubics
/// p = a X^3 + 3b X^2 Y + 3c X Y^2 + d Y^3 with coordinates (a,b,c,d) and
/// m = sl(2,R) acting by derivations. The symmetrized moment map is the
/// unique (up to scale) m-equivariant symmetric map V x V -> m; its
/// normalization is pinned by the Jacobi identity.
pub(super) fn build_g2() -> Algebra {
    // sl(2) action matrices on coordinates (a,b,c,d):
    // h = X d/dX - Y d/dY, e = X d/dY, f = Y d/dX.
    let act = |t: usize| -> ExactMatrix {
        let rows: [[i64; 4]; 4] = match t {
            0 => [[3, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -3]], // h
            1 => [[0, 3, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1], [0, 0, 0, 0]],   // e
            _ => [[0, 0, 0, 0], [1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0]],   // f
        };
        ExactMatrix::from_fn(4, 4, |r, c| Scalar::from_int(rows[r][c]))
    };
    let sl2_ad = |t: usize| -> ExactMatrix {
        // ad on (h,e,f): [h,e]=2e, [h,f]=-2f, [e,f]=h.
        let rows: [[i64; 3]; 3] = match t {
            0 => [[0, 0, 0], [0, 2, 0], [0, 0, -2]],
            1 => [[0, 0, 1], [-2, 0, 0], [0, 0, 0]],
            _ => [[0, -1, 0], [0, 0, 0], [2, 0, 0]],
        };
        ExactMatrix::from_fn(3, 3, |r, c| Scalar::from_int(rows[r][c]))
    };
    let omega_rows: [[i64; 4]; 4] = [
        [0, 0, 0, 1],
        [0, 0, -3, 0],
        [0, 3, 0, 0],
        [-1, 0, 0, 0],
    ];
    let omega = ExactMatrix::from_fn(4, 4, |r, c| Scalar::from_int(omega_rows[r][c]));

    // Solve for the equivariant symmetric bilinear map B: V x V -> m.
    // Unknowns u[(i,j), k] for i <= j, k in {h,e,f}.
    let pair_index = |i: usize, j: usize| -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // pairs in order (0,0),(0,1),(0,2),(0,3),(1,1),(1,2),(1,3),(2,2),(2,3),(3,3)
        let offset = [0, 4, 7, 9];
        offset[i] + (j - i)
    };
    let nunk = 10 * 3;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for t in 0..3 {
        let tv = act(t);
        let tad = sl2_ad(t);
        for i in 0..4 {
            for j in i..4 {
                for k in 0..3 {
                    // component k of B(T pi, pj) + B(pi, T pj) - [T, B(pi,pj)]
                    let mut row = vec![Scalar::zero(); nunk];
                    for a in 0..4 {
                        let c1 = tv.get(a, i);
                        if !c1.is_zero() {
                            row[pair_index(a, j) * 3 + k] += c1;
                        }
                        let c2 = tv.get(a, j);
                        if !c2.is_zero() {
                            row[pair_index(i, a) * 3 + k] += c2;
                        }
                    }
                    for l in 0..3 {
                        let c = tad.get(k, l);
                        if !c.is_zero() {
                            row[pair_index(i, j) * 3 + l] -= c;
                        }
                    }
                    rows.push(row);
                }
            }
        }
    }
    let sys = ExactMatrix::from_rows(rows);
    let kernel = sys.kernel();
    assert_eq!(kernel.len(), 1, "equivariant map space not one-dimensional");
    let b0 = &kernel[0];
    // b0[(pair)*3 + k]: coefficient of m_k in B0(pi, pj).

    // Assemble the bracket table as a function of the scale c, pin c by a
    // Jacobi identity that is linear in c, then rebuild.
    let build = |scale: &Scalar| -> Algebra {
        build_g2_table(&act, &omega, b0, scale)
    };
    // Jacobi on (vbar_0, v_1, v_2) is linear in the scale; evaluate the
    // residual at scale 0 and 1 and solve.
    let r0 = g2_jacobi_probe(&build(&Scalar::zero()));
    let r1 = g2_jacobi_probe(&build(&Scalar::one()));
    let slope: Vec<Scalar> = r1.iter().zip(&r0).map(|(a, b)| a - b).collect();
    let mut scale: Option<Scalar> = None;
    for (s, r) in slope.iter().zip(&r0) {
        if !s.is_zero() {
            let c = -(r / s);
            scale = Some(c);
            break;
        }
    }
    let scale = scale.expect("Jacobi probe does not constrain the scale");
    for (s, r) in slope.iter().zip(&r0) {
        assert!((r + s * &scale).is_zero(), "inconsistent Jacobi constraint");
    }
    let alg = build(&scale);
    assert!(alg.jacobi_all_triples(), "g2 Jacobi identity failed");
    alg
}

fn g2_jacobi_probe(alg: &Algebra) -> Vec<Scalar> {
    let sv = alg.scalar_vars().clone();
    let x = alg.basis_elt(alg.vbar_idx[0], &sv);
    let y = alg.basis_elt(alg.v_idx[1], &sv);
    let z = alg.basis_elt(alg.v_idx[2], &sv);
    alg.jacobi(&x, &y, &z)
        .coeffs
        .iter()
        .map(|c| c.as_scalar().unwrap())
        .collect()
}

fn build_g2_table(
    act: &dyn Fn(usize) -> ExactMatrix,
    omega: &ExactMatrix,
    b0: &[Scalar],
    scale: &Scalar,
) -> Algebra {
    // Basis order: F, p0..p3, H, h, e, f, p0~..p3~, E.
    let dim = 14;
    let idx_f = 0usize;
    let v_idx: Vec<usize> = (1..5).collect();
    let idx_h = 5;
    let m_idx: Vec<usize> = (6..9).collect();
    let vbar_idx: Vec<usize> = (9..13).collect();
    let idx_e = 13;
    let names: Vec<String> = [
        "F", "p0", "p1", "p2", "p3", "H", "h", "e", "f", "p0~", "p1~", "p2~", "p3~", "E",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let grades = vec![-2, -1, -1, -1, -1, 0, 0, 0, 0, 1, 1, 1, 1, 2];

    let pair_index = |i: usize, j: usize| -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let offset = [0, 4, 7, 9];
        offset[i] + (j - i)
    };
    // b_mu(i,j) coefficients over m basis, scaled.
    let bmu = |i: usize, j: usize, k: usize| -> Scalar { scale * &b0[pair_index(i, j) * 3 + k] };

    let mut table: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); dim]; dim];
    let mut set = |i: usize, j: usize, val: Vec<(usize, Scalar)>| {
        let neg: Vec<(usize, Scalar)> = val.iter().map(|(k, c)| (*k, -c)).collect();
        table[i][j] = val.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        table[j][i] = neg.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    };

    // Grading brackets with H.
    for (i, g) in grades.iter().enumerate() {
        if i == idx_h || *g == 0 {
            continue;
        }
        set(idx_h, i, vec![(i, Scalar::from_int(*g as i64))]);
    }
    // [E, F] = H.
    set(idx_e, idx_f, vec![(idx_h, Scalar::one())]);
    // sl2 inside m.
    set(m_idx[0], m_idx[1], vec![(m_idx[1], Scalar::from_int(2))]);
    set(m_idx[0], m_idx[2], vec![(m_idx[2], Scalar::from_int(-2))]);
    set(m_idx[1], m_idx[2], vec![(m_idx[0], Scalar::one())]);
    // m action on V and on g_1.
    for t in 0..3 {
        let a = act(t);
        for j in 0..4 {
            let col: Vec<(usize, Scalar)> = (0..4)
                .filter(|&r| !a.get(r, j).is_zero())
                .map(|r| (v_idx[r], a.get(r, j).clone()))
                .collect();
            set(m_idx[t], v_idx[j], col);
            let colbar: Vec<(usize, Scalar)> = (0..4)
                .filter(|&r| !a.get(r, j).is_zero())
                .map(|r| (vbar_idx[r], a.get(r, j).clone()))
                .collect();
            set(m_idx[t], vbar_idx[j], colbar);
        }
    }
    // [v_i, v_j] = omega_ij F; [vbar_i, vbar_j] = -omega_ij E.
    for i in 0..4 {
        for j in i + 1..4 {
            let w = omega.get(i, j).clone();
            set(v_idx[i], v_idx[j], vec![(idx_f, w.clone())]);
            set(vbar_idx[i], vbar_idx[j], vec![(idx_e, -&w)]);
        }
    }
    // [vbar_i, v_j] = -2 B_mu(v_i, v_j) - (1/2) omega_ij H.
    for i in 0..4 {
        for j in 0..4 {
            let mut val: Vec<(usize, Scalar)> = Vec::new();
            for k in 0..3 {
                let c = Scalar::from_int(-2) * bmu(i, j, k);
                if !c.is_zero() {
                    val.push((m_idx[k], c));
                }
            }
            let w = omega.get(i, j);
            if !w.is_zero() {
                val.push((idx_h, Scalar::rat(-1, 2) * w));
            }
            set(vbar_idx[i], v_idx[j], val);
        }
    }
    // Bar maps: [v_i, E] = vbar_i, [vbar_i, F] = v_i.
    for i in 0..4 {
        set(v_idx[i], idx_e, vec![(vbar_idx[i], Scalar::one())]);
        set(vbar_idx[i], idx_f, vec![(v_idx[i], Scalar::one())]);
    }

    GradedLieAlgebra::from_table(
        Family::G2,
        names,
        grades,
        table,
        idx_f,
        idx_h,
        idx_e,
        v_idx,
        vbar_idx,
        m_idx,
    )
}
