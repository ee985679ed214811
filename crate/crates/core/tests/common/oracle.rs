//! Reference computations written from the definitions, sharing nothing
//! with the library beyond scalar arithmetic and the form container.

use g2lie::exterior::{Blade, KForm};
use g2lie::liealg::LieAlgebra;
use g2lie::scalars::FieldElement;

type F = FieldElement;

fn add(a: &F, b: &F) -> F {
    a.checked_add(b).unwrap()
}

fn mul(a: &F, b: &F) -> F {
    a.checked_mul(b).unwrap()
}

/// c[i][j][k]: coefficient of e_k in [e_i, e_j], 0-based, read off
/// deᵏ(e_i, e_j) = −eᵏ([e_i, e_j]).
pub struct Brackets {
    pub n: usize,
    pub c: Vec<Vec<Vec<F>>>,
}

impl Brackets {
    pub fn of(g: &LieAlgebra<F>) -> Self {
        let n = g.dim();
        let mut c = vec![vec![vec![F::zero(); n]; n]; n];
        for k in 0..n {
            for (b, coef) in g.diff(k + 1).terms() {
                let idx = b.indices();
                let (i, j) = (idx[0] - 1, idx[1] - 1);
                c[i][j][k] = -coef.clone();
                c[j][i][k] = coef.clone();
            }
        }
        Brackets { n, c }
    }

    /// [x, y] for coordinate vectors.
    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let s = mul(&x[i], &y[j]);
                for k in 0..self.n {
                    out[k] = add(&out[k], &mul(&s, &self.c[i][j][k]));
                }
            }
        }
        out
    }
}

/// Sign that sorts `idx`, or None on a repeat.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// α(e_{i₁}, …, e_{i_k}) with 1-based indices, determinant convention.
pub fn eval_basis(a: &KForm<F>, idx: &[usize]) -> F {
    match sort_sign(idx) {
        None => F::zero(),
        Some((v, s)) => {
            let c = a.terms().get(&Blade::sorted(&v).unwrap()).cloned().unwrap_or_else(F::zero);
            if s < 0 {
                -c
            } else {
                c
            }
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// dα by dα(x₀,…,x_k) = Σ_{a<b} (−1)^{a+b} α([x_a, x_b], x₀, …, x̂_a, …, x̂_b, …, x_k)
/// on every increasing basis tuple.
pub fn ce_d_by_evaluation(g: &LieAlgebra<F>, a: &KForm<F>) -> KForm<F> {
    let br = Brackets::of(g);
    let n = g.dim();
    let k = a.degree();
    let mut terms = Vec::new();
    for tuple in subsets(n, k + 1) {
        let mut total = F::zero();
        for p in 0..tuple.len() {
            for q in p + 1..tuple.len() {
                let rest: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != p && t != q)
                    .map(|(_, &i)| i)
                    .collect();
                let bracket = &br.c[tuple[p] - 1][tuple[q] - 1];
                let mut inner = F::zero();
                for (l, c) in bracket.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = vec![l + 1];
                    args.extend(&rest);
                    inner = add(&inner, &mul(c, &eval_basis(a, &args)));
                }
                if (p + q) % 2 == 1 {
                    inner = -inner;
                }
                total = add(&total, &inner);
            }
        }
        if !total.is_zero() {
            terms.push((Blade::sorted(&tuple).unwrap(), total));
        }
    }
    KForm::from_terms(n, k + 1, terms).unwrap()
}

/// Every basis form of degree `k`.
pub fn basis_forms(n: usize, k: usize) -> Vec<KForm<F>> {
    subsets(n, k).into_iter().map(|s| KForm::basis(n, &s).unwrap()).collect()
}

/// Null space of `rows` (each of length `ncols`) by Gauss–Jordan.
pub fn null_space(mut rows: Vec<Vec<F>>, ncols: usize) -> Vec<Vec<F>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().unwrap();
        rows[r] = rows[r].iter().map(|x| mul(x, &inv)).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = x.checked_sub(&mul(&f, y)).unwrap();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); ncols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<F>], ncols: usize) -> usize {
    ncols - null_space(rows.to_vec(), ncols).len()
}

/// Index of the unknown D(j, k) (coefficient of e_k in D e_j), 1-based.
fn var(n: usize, j: usize, k: usize) -> usize {
    (j - 1) * n + (k - 1)
}

/// The equations D[e_i, e_j] = [D e_i, e_j] + [e_i, D e_j], row-major
/// unknowns.
pub fn derivation_equations(g: &LieAlgebra<F>) -> Vec<Vec<F>> {
    let br = Brackets::of(g);
    let n = br.n;
    let mut rows = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for m in 1..=n {
                let mut row = vec![F::zero(); n * n];
                for l in 1..=n {
                    let c = &br.c[i - 1][j - 1][l - 1];
                    row[var(n, l, m)] = add(&row[var(n, l, m)], c);
                    let c = &br.c[l - 1][j - 1][m - 1];
                    row[var(n, i, l)] = row[var(n, i, l)].checked_sub(c).unwrap();
                    let c = &br.c[i - 1][l - 1][m - 1];
                    row[var(n, j, l)] = row[var(n, j, l)].checked_sub(c).unwrap();
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Der(g) as row-major n×n vectors.
pub fn derivations(g: &LieAlgebra<F>) -> Vec<Vec<F>> {
    let n = g.dim();
    null_space(derivation_equations(g), n * n)
}

/// The equations saying that D, acting on the coframe by
/// eᵏ ↦ Σⱼ D(j, k) eʲ and extended as a derivation, kills `psi`.
pub fn stabilizer_equations(n: usize, psi: &KForm<F>) -> Vec<Vec<F>> {
    let k = psi.degree();
    let targets = subsets(n, k);
    let mut rows = vec![vec![F::zero(); n * n]; targets.len()];
    let pos = |s: &[usize]| targets.iter().position(|t| t == s).unwrap();
    for (b, c) in psi.terms() {
        let idx = b.indices();
        for slot in 0..idx.len() {
            for j in 1..=n {
                let mut replaced = idx.clone();
                replaced[slot] = j;
                if let Some((sorted, s)) = sort_sign(&replaced) {
                    let v = var(n, j, idx[slot]);
                    let row = &mut rows[pos(&sorted)];
                    row[v] = if s > 0 { add(&row[v], c) } else { row[v].checked_sub(c).unwrap() };
                }
            }
        }
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    rows
}

/// Derivations of `g` that kill `psi`.
pub fn stabilizing_derivations(g: &LieAlgebra<F>, psi: &KForm<F>) -> Vec<Vec<F>> {
    let n = g.dim();
    let mut rows = derivation_equations(g);
    rows.extend(stabilizer_equations(n, psi));
    null_space(rows, n * n)
}

/// Whether two families span the same subspace.
pub fn same_span(a: &[Vec<F>], b: &[Vec<F>], ncols: usize) -> bool {
    let ra = rank(a, ncols);
    let rb = rank(b, ncols);
    let both: Vec<Vec<F>> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both, ncols) == ra
}
