//! Small matrix groups over prime fields, realized as permutation groups on
//! the nonzero vectors of their natural module.
//!
//! Vectors are rows; matrices act on the right, so left-to-right composition
//! of permutations corresponds to left-to-right matrix products. Entries are
//! small integers mod p; only prime fields are supported.

use crate::error::{GroupError, Result};
use crate::fxhash::FxHashSet;
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::Permutation;

/// Dense n×n matrix over F_p, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    pub n: usize,
    pub p: u8,
    pub entries: Vec<u8>,
}

impl FpMatrix {
    pub fn new(n: usize, p: u8, entries: Vec<u8>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(GroupError::InvalidParameter(format!(
                "matrix needs {}x{} = {} entries, got {}",
                n,
                n,
                n * n,
                entries.len()
            )));
        }
        if !is_prime_u8(p) {
            return Err(GroupError::InvalidParameter(format!(
                "field order {p} is not prime"
            )));
        }
        let entries = entries.into_iter().map(|x| x % p).collect();
        Ok(FpMatrix { n, p, entries })
    }

    pub fn identity(n: usize, p: u8) -> Self {
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        FpMatrix { n, p, entries }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        let n = self.n;
        let p = self.p as u32;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k) as u32;
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let cur = entries[i * n + j] as u32;
                    entries[i * n + j] = ((cur + a * other.at(k, j) as u32) % p) as u8;
                }
            }
        }
        FpMatrix {
            n,
            p: self.p,
            entries,
        }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u8]) -> Vec<u8> {
        let n = self.n;
        let p = self.p as u32;
        let mut out = vec![0u8; n];
        for j in 0..n {
            let mut acc = 0u32;
            for i in 0..n {
                acc += v[i] as u32 * self.at(i, j) as u32;
            }
            out[j] = (acc % p) as u8;
        }
        out
    }

    pub fn is_invertible(&self) -> bool {
        rank(self.n, self.p, &mut self.entries.clone()) == self.n
    }
}

fn is_prime_u8(p: u8) -> bool {
    p >= 2 && (2..p).all(|d| p % d != 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // p is tiny; a^(p-2) by repeated multiplication
    let mut acc = 1u32;
    for _ in 0..p.saturating_sub(2) {
        acc = acc * a % p;
    }
    acc
}

/// Row-reduces `rows` (n columns each, concatenated) in place; returns rank.
fn rank(n: usize, p: u8, data: &mut [u8]) -> usize {
    let rows = data.len() / n;
    let p32 = p as u32;
    let mut r = 0usize;
    for col in 0..n {
        let pivot = (r..rows).find(|&i| data[i * n + col] != 0);
        let Some(pivot) = pivot else { continue };
        data.swap_range(pivot * n, r * n, n);
        let inv = inv_mod(data[r * n + col] as u32, p32);
        for j in 0..n {
            data[r * n + j] = (data[r * n + j] as u32 * inv % p32) as u8;
        }
        for i in 0..rows {
            if i != r && data[i * n + col] != 0 {
                let f = data[i * n + col] as u32;
                for j in 0..n {
                    let v = data[i * n + j] as u32 + (p32 - f) * data[r * n + j] as u32;
                    data[i * n + j] = (v % p32) as u8;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

trait SwapRange {
    fn swap_range(&mut self, a: usize, b: usize, len: usize);
}

impl SwapRange for [u8] {
    fn swap_range(&mut self, a: usize, b: usize, len: usize) {
        if a == b {
            return;
        }
        for k in 0..len {
            self.swap(a + k, b + k);
        }
    }
}

/// A matrix group over F_p given by invertible generator matrices.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub dim: usize,
    pub p: u8,
    pub generators: Vec<FpMatrix>,
}

impl MatrixGroup {
    pub fn new(dim: usize, p: u8, generators: Vec<FpMatrix>) -> Result<Self> {
        if generators.is_empty() {
            return Err(GroupError::InvalidParameter(
                "matrix group needs at least one generator".into(),
            ));
        }
        for m in &generators {
            if m.n != dim || m.p != p {
                return Err(GroupError::InvalidParameter(
                    "generator shape/field mismatch".into(),
                ));
            }
            if !m.is_invertible() {
                return Err(GroupError::InvalidParameter(format!(
                    "singular generator {:?}",
                    m.entries
                )));
            }
        }
        Ok(MatrixGroup { dim, p, generators })
    }

    /// Number of nonzero vectors, i.e. the permutation degree.
    pub fn point_count(&self) -> u64 {
        (self.p as u64).pow(self.dim as u32) - 1
    }

    /// Faithful permutation image on the nonzero vectors, ordered by the
    /// integer encoding `sum v_i * p^i` (coordinate 0 least significant).
    pub fn to_perm(&self, limits: &Limits) -> Result<PermGroup> {
        let points = self.point_count();
        if points > limits.max_elements || points > u16::MAX as u64 {
            return Err(GroupError::cap("matrix action degree", points, limits.max_elements));
        }
        let points = points as usize;
        let gens = self
            .generators
            .iter()
            .map(|m| {
                let mut images = vec![0u16; points];
                for code in 1..=points {
                    let v = decode(code as u64, self.dim, self.p);
                    let w = m.apply_row(&v);
                    images[code - 1] = (encode(&w, self.p) - 1) as u16;
                }
                Permutation::from_images(images)
            })
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(gens)
    }

    /// Recovers the matrix corresponding to a permutation of the vector
    /// action (the rows are the images of the basis vectors).
    pub fn matrix_of_perm(&self, perm: &Permutation) -> Result<FpMatrix> {
        let mut entries = vec![0u8; self.dim * self.dim];
        for i in 0..self.dim {
            let mut basis = vec![0u8; self.dim];
            basis[i] = 1;
            let code = encode(&basis, self.p);
            let image_code = perm.apply(code as usize - 1) as u64 + 1;
            let image = decode(image_code, self.dim, self.p);
            entries[i * self.dim..(i + 1) * self.dim].copy_from_slice(&image);
        }
        FpMatrix::new(self.dim, self.p, entries)
    }

    /// All invariant subspaces, via spinning every nonzero vector and closing
    /// the resulting set under sums. Each subspace is returned as a reduced
    /// row-echelon basis; the zero space is the empty basis.
    pub fn invariant_subspaces(&self, limits: &Limits) -> Result<Vec<Subspace>> {
        let (n, p) = (self.dim, self.p);
        if (p == 2 && n > 8) || (p == 3 && n > 5) || (p > 3 && n > 3) {
            return Err(GroupError::InvalidParameter(format!(
                "invariant subspace search not supported for dimension {n} over F_{p}"
            )));
        }
        let mut seen: FxHashSet<Vec<u64>> = FxHashSet::default();
        let mut spaces: Vec<Subspace> = Vec::new();
        let mut push = |s: Subspace, spaces: &mut Vec<Subspace>| -> Result<bool> {
            let key = s.key();
            if seen.insert(key) {
                if spaces.len() as u64 + 1 > limits.max_subspaces {
                    return Err(GroupError::cap(
                        "invariant subspaces",
                        spaces.len() as u64 + 1,
                        limits.max_subspaces,
                    ));
                }
                spaces.push(s);
                Ok(true)
            } else {
                Ok(false)
            }
        };
        push(Subspace::zero(n, p), &mut spaces)?;
        let total = (p as u64).pow(n as u32);
        for code in 1..total {
            let v = decode(code, n, p);
            let s = self.spin(&[v]);
            push(s, &mut spaces)?;
        }
        // close under sums
        let mut i = 0;
        while i < spaces.len() {
            let mut j = 0;
            while j < i {
                let sum = spaces[i].sum(&spaces[j]);
                push(sum, &mut spaces)?;
                j += 1;
            }
            i += 1;
        }
        spaces.sort_by_key(|s| (s.dim(), s.key()));
        Ok(spaces)
    }

    /// Smallest invariant subspace containing the given vectors.
    pub fn spin(&self, vectors: &[Vec<u8>]) -> Subspace {
        let mut s = Subspace::zero(self.dim, self.p);
        let mut queue: Vec<Vec<u8>> = Vec::new();
        for v in vectors {
            if s.insert(v) {
                queue.push(v.clone());
            }
        }
        while let Some(v) = queue.pop() {
            for m in &self.generators {
                let w = m.apply_row(&v);
                if s.insert(&w) {
                    queue.push(w);
                }
            }
        }
        s
    }

    /// True when every invariant subspace has an invariant complement.
    pub fn is_completely_reducible(&self, limits: &Limits) -> Result<bool> {
        let spaces = self.invariant_subspaces(limits)?;
        let n = self.dim;
        Ok(spaces.iter().all(|w| {
            spaces.iter().any(|c| {
                w.dim() + c.dim() == n && w.sum(c).dim() == n
            })
        }))
    }

    pub fn is_irreducible(&self, limits: &Limits) -> Result<bool> {
        Ok(self.invariant_subspaces(limits)?.len() == 2 || self.dim == 0)
    }
}

pub fn encode(v: &[u8], p: u8) -> u64 {
    let mut acc = 0u64;
    for (i, &x) in v.iter().enumerate() {
        acc += x as u64 * (p as u64).pow(i as u32);
    }
    acc
}

pub fn decode(mut code: u64, n: usize, p: u8) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for slot in v.iter_mut() {
        *slot = (code % p as u64) as u8;
        code /= p as u64;
    }
    v
}

/// A subspace of F_p^n held as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    p: u8,
    basis: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn zero(n: usize, p: u8) -> Self {
        Subspace {
            n,
            p,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u8>] {
        &self.basis
    }

    /// Reduces `v` against the basis; inserts and re-echelonizes when
    /// independent. Returns true when the dimension grew.
    pub fn insert(&mut self, v: &[u8]) -> bool {
        let mut data: Vec<u8> = self.basis.iter().flatten().copied().collect();
        data.extend_from_slice(v);
        let r = rank(self.n, self.p, &mut data);
        if r == self.basis.len() {
            return false;
        }
        self.basis = data[..r * self.n]
            .chunks(self.n)
            .map(|c| c.to_vec())
            .collect();
        true
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut data: Vec<u8> = self.basis.iter().flatten().copied().collect();
        data.extend_from_slice(v);
        rank(self.n, self.p, &mut data) == self.basis.len()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut data: Vec<u8> = self.basis.iter().flatten().copied().collect();
        data.extend(other.basis.iter().flatten().copied());
        let r = rank(self.n, self.p, &mut data);
        Subspace {
            n: self.n,
            p: self.p,
            basis: data[..r * self.n].chunks(self.n).map(|c| c.to_vec()).collect(),
        }
    }

    fn key(&self) -> Vec<u64> {
        let mut rows: Vec<u64> = self.basis.iter().map(|r| encode(r, self.p)).collect();
        rows.sort_unstable();
        rows
    }
}

/// The expected order of GL_n(p): product of (p^n - p^i).
pub fn gl_order(n: usize, p: u8) -> u64 {
    let pn = (p as u64).pow(n as u32);
    (0..n).map(|i| pn - (p as u64).pow(i as u32)).product()
}

fn transvection(n: usize, p: u8, i: usize, j: usize) -> FpMatrix {
    let mut m = FpMatrix::identity(n, p);
    m.entries[i * n + j] = 1;
    m
}

fn cycle_matrix(n: usize, p: u8, sign: u8) -> FpMatrix {
    // e_i -> e_{i+1}, e_n -> sign * e_1
    let mut entries = vec![0u8; n * n];
    for i in 0..n - 1 {
        entries[i * n + i + 1] = 1;
    }
    entries[(n - 1) * n] = sign % p;
    FpMatrix { n, p, entries }
}

fn least_primitive_root(p: u8) -> u8 {
    let order = |a: u64| {
        let mut k = 1;
        let mut acc = a % p as u64;
        while acc != 1 {
            acc = acc * a % p as u64;
            k += 1;
        }
        k
    };
    (2..p).find(|&a| order(a as u64) == (p - 1) as u64).unwrap_or(1)
}

/// GL(n, p) with a cyclic-shift companion matrix, an elementary transvection
/// and (for p > 2) a primitive scalar on the first coordinate. The order is
/// validated against the product formula at construction time.
pub fn gl(n: usize, p: u8, limits: &Limits) -> Result<MatrixGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("GL(0, p) not supported".into()));
    }
    let mut gens = Vec::new();
    if n == 1 {
        let mut m = FpMatrix::identity(1, p);
        m.entries[0] = least_primitive_root(p);
        if p == 2 {
            m.entries[0] = 1;
        }
        gens.push(m);
    } else {
        gens.push(cycle_matrix(n, p, 1));
        gens.push(transvection(n, p, 0, 1));
        if p > 2 {
            let mut d = FpMatrix::identity(n, p);
            d.entries[0] = least_primitive_root(p);
            gens.push(d);
        }
    }
    let g = MatrixGroup::new(n, p, gens)?;
    validate_order(&g, gl_order(n, p), limits)?;
    Ok(g)
}

/// SL(n, p) from elementary transvections (n = 2) or a transvection plus a
/// determinant-one cycle matrix (n >= 3), validated against |GL|/(p-1).
pub fn sl(n: usize, p: u8, limits: &Limits) -> Result<MatrixGroup> {
    if n < 2 {
        return Err(GroupError::InvalidParameter("SL needs dimension >= 2".into()));
    }
    let gens = if n == 2 {
        vec![transvection(2, p, 0, 1), transvection(2, p, 1, 0)]
    } else {
        // the n-cycle permutation matrix has determinant (-1)^(n-1); flip
        // the wrap-around sign to land in SL
        let sign = if n % 2 == 1 { 1 } else { p - 1 };
        vec![cycle_matrix(n, p, sign), transvection(n, p, 0, 1)]
    };
    let g = MatrixGroup::new(n, p, gens)?;
    validate_order(&g, gl_order(n, p) / (p as u64 - 1), limits)?;
    Ok(g)
}

/// The symplectic group Sp_4(2) of order 720, generated by the transvections
/// x -> x + B(x,v)v of the standard alternating form
/// B(x,y) = x1 y2 + x2 y1 + x3 y4 + x4 y3.
pub fn sp4_2(limits: &Limits) -> Result<MatrixGroup> {
    let n = 4;
    let p = 2u8;
    let form = |x: &[u8], y: &[u8]| -> u8 {
        (x[0] & y[1]) ^ (x[1] & y[0]) ^ (x[2] & y[3]) ^ (x[3] & y[2])
    };
    let mut gens = Vec::new();
    for code in 1..16u64 {
        let v = decode(code, n, p);
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            let mut e = vec![0u8; n];
            e[i] = 1;
            let c = form(&e, &v);
            for (j, slot) in e.iter().copied().enumerate() {
                entries[i * n + j] = slot ^ (c & v[j]);
            }
        }
        gens.push(FpMatrix::new(n, p, entries)?);
    }
    // every generator must preserve the form
    for m in &gens {
        for a in 1..16u64 {
            for b in 1..16u64 {
                let x = decode(a, n, p);
                let y = decode(b, n, p);
                if form(&m.apply_row(&x), &m.apply_row(&y)) != form(&x, &y) {
                    return Err(GroupError::InvalidParameter(
                        "transvection does not preserve the alternating form".into(),
                    ));
                }
            }
        }
    }
    let g = MatrixGroup::new(n, p, gens)?;
    validate_order(&g, 720, limits)?;
    Ok(g)
}

/// The completely reducible group 3^(n/2):2 of trivial centre inside
/// GL_n(2): block-diagonal order-3 rotations on two-dimensional summands,
/// plus one involution inverting all of them simultaneously.
pub fn b_matrix_group(n: usize, limits: &Limits) -> Result<MatrixGroup> {
    if n == 0 || n % 2 != 0 {
        return Err(GroupError::InvalidParameter(
            "the 3^(n/2):2 construction needs positive even dimension".into(),
        ));
    }
    let m = n / 2;
    let mut gens = Vec::new();
    // order-3 element of GL_2(2): (e1, e2) -> (e2, e1 + e2)
    for blk in 0..m {
        let mut g = FpMatrix::identity(n, 2);
        let o = 2 * blk;
        g.entries[o * n + o] = 0;
        g.entries[o * n + o + 1] = 1;
        g.entries[(o + 1) * n + o] = 1;
        g.entries[(o + 1) * n + o + 1] = 1;
        gens.push(g);
    }
    // inverting involution: swap within every block
    let mut inv = FpMatrix::identity(n, 2);
    for blk in 0..m {
        let o = 2 * blk;
        inv.entries[o * n + o] = 0;
        inv.entries[o * n + o + 1] = 1;
        inv.entries[(o + 1) * n + o] = 1;
        inv.entries[(o + 1) * n + o + 1] = 0;
    }
    gens.push(inv);
    let g = MatrixGroup::new(n, 2, gens)?;
    validate_order(&g, 2 * 3u64.pow(m as u32), limits)?;
    Ok(g)
}

fn validate_order(g: &MatrixGroup, expected: u64, limits: &Limits) -> Result<()> {
    let perm = g.to_perm(limits)?;
    let order = perm.order(limits)?;
    if order != expected {
        return Err(GroupError::InvalidParameter(format!(
            "matrix group order {order} does not match expected {expected}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn gl_orders_match_product_formula() {
        assert_eq!(gl_order(2, 2), 6);
        assert_eq!(gl_order(3, 2), 168);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(4, 2), 20160);
        // construction validates order internally
        gl(2, 2, &lim()).unwrap();
        gl(3, 2, &lim()).unwrap();
        gl(2, 3, &lim()).unwrap();
        sl(2, 3, &lim()).unwrap();
        sl(3, 2, &lim()).unwrap();
    }

    #[test]
    fn gl22_to_perm_is_sym3() {
        let g = gl(2, 2, &lim()).unwrap().to_perm(&lim()).unwrap();
        assert_eq!(g.degree(), 3);
        assert_eq!(g.order(&lim()).unwrap(), 6);
    }

    #[test]
    fn gl32_to_perm_degree7_order168() {
        let g = gl(3, 2, &lim()).unwrap().to_perm(&lim()).unwrap();
        assert_eq!(g.degree(), 7);
        assert_eq!(g.order(&lim()).unwrap(), 168);
    }

    #[test]
    fn scalar_group_of_gl23() {
        let minus = FpMatrix::new(2, 3, vec![2, 0, 0, 2]).unwrap();
        let g = MatrixGroup::new(2, 3, vec![minus]).unwrap();
        let p = g.to_perm(&lim()).unwrap();
        assert_eq!(p.degree(), 8);
        assert_eq!(p.order(&lim()).unwrap(), 2);
    }

    #[test]
    fn sp42_order_and_degree() {
        let g = sp4_2(&lim()).unwrap();
        let p = g.to_perm(&lim()).unwrap();
        assert_eq!(p.degree(), 15);
        assert_eq!(p.order(&lim()).unwrap(), 720);
    }

    #[test]
    fn natural_module_of_gl32_is_irreducible() {
        let g = gl(3, 2, &lim()).unwrap();
        let spaces = g.invariant_subspaces(&lim()).unwrap();
        assert_eq!(spaces.len(), 2);
        assert!(g.is_irreducible(&lim()).unwrap());
        assert!(g.is_completely_reducible(&lim()).unwrap());
    }

    #[test]
    fn b6_has_three_invariant_summands() {
        let b6 = b_matrix_group(6, &lim()).unwrap();
        let spaces = b6.invariant_subspaces(&lim()).unwrap();
        let dims: Vec<usize> = spaces.iter().map(|s| s.dim()).collect();
        assert_eq!(dims.iter().filter(|&&d| d == 2).count(), 3);
        assert!(b6.is_completely_reducible(&lim()).unwrap());
        // built as a direct sum: the three 2-dimensional spaces are the
        // coordinate blocks
        for blk in 0..3 {
            let mut v = vec![0u8; 6];
            v[2 * blk] = 1;
            let spun = b6.spin(&[v]);
            assert_eq!(spun.dim(), 2);
        }
    }

    #[test]
    fn unipotent_line_has_no_complement() {
        let u = FpMatrix::new(2, 2, vec![1, 1, 0, 1]).unwrap();
        let g = MatrixGroup::new(2, 2, vec![u]).unwrap();
        let spaces = g.invariant_subspaces(&lim()).unwrap();
        // 0, the fixed line, and the full space
        assert_eq!(spaces.len(), 3);
        assert!(!g.is_completely_reducible(&lim()).unwrap());
    }

    #[test]
    fn identity_group_sees_all_subspaces() {
        let g = MatrixGroup::new(2, 2, vec![FpMatrix::identity(2, 2)]).unwrap();
        let spaces = g.invariant_subspaces(&lim()).unwrap();
        assert_eq!(spaces.len(), 5);
        assert!(g.is_completely_reducible(&lim()).unwrap());
    }

    #[test]
    fn singular_generator_rejected() {
        let z = FpMatrix::new(2, 2, vec![1, 1, 1, 1]).unwrap();
        assert!(MatrixGroup::new(2, 2, vec![z]).is_err());
    }

    #[test]
    fn matrix_of_perm_roundtrip() {
        let g = gl(3, 2, &lim()).unwrap();
        let p = g.to_perm(&lim()).unwrap();
        for (gen_mat, gen_perm) in g.generators.iter().zip(p.generators()) {
            let back = g.matrix_of_perm(gen_perm).unwrap();
            assert_eq!(&back, gen_mat);
        }
    }
}
