//! Named group constructors and combinators: the inventory every analysis
//! and audit run draws from.

use crate::error::{GroupError, Result};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::matgroup;
use crate::perm::Permutation;
use crate::structure;

/// Abstract syntax of the group-construction language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    DirectProduct(Box<GroupExpr>, Box<GroupExpr>),
    /// Imprimitive wreath product, bottom then top.
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
    GL(usize, u8),
    SL(usize, u8),
    Sp4_2,
    /// The completely reducible 3^(n/2):2 with trivial centre, realized on
    /// 3·(n/2) points.
    B(usize),
    /// The Frobenius group 7:3 on 7 points.
    FrobF21,
    /// The extraspecial plus-type group of order 32, transitive on 8 points.
    D8centralD8,
    /// Matrix group over F_p from explicit generator matrices (row lists).
    Matrix {
        p: u8,
        gens: Vec<Vec<u8>>,
        dim: usize,
    },
    /// Subgroup of the parent generated by explicit permutations.
    Subgroup(Box<GroupExpr>, Vec<String>),
    /// Quotient by a normal subgroup.
    Quotient(Box<GroupExpr>, Box<GroupExpr>),
    /// Fiber product: subdirect product of the two groups glued over the
    /// common quotients by the named normal subgroups.
    Fiber {
        left: Box<GroupExpr>,
        left_normal: Box<GroupExpr>,
        right: Box<GroupExpr>,
        right_normal: Box<GroupExpr>,
    },
}

impl std::fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupExpr::Cyclic(m) => write!(f, "C({m})"),
            GroupExpr::Dihedral(m) => write!(f, "D({m})"),
            GroupExpr::Symmetric(n) => write!(f, "S({n})"),
            GroupExpr::Alternating(n) => write!(f, "A({n})"),
            GroupExpr::Quaternion8 => write!(f, "Q8"),
            GroupExpr::DirectProduct(a, b) => write!(f, "dp({a},{b})"),
            GroupExpr::Wreath(a, b) => write!(f, "wr({a},{b})"),
            GroupExpr::GL(n, p) => write!(f, "GL({n},{p})"),
            GroupExpr::SL(n, p) => write!(f, "SL({n},{p})"),
            GroupExpr::Sp4_2 => write!(f, "Sp4(2)"),
            GroupExpr::B(n) => write!(f, "B({n})"),
            GroupExpr::FrobF21 => write!(f, "F21"),
            GroupExpr::D8centralD8 => write!(f, "D8oD8"),
            GroupExpr::Matrix { p, gens, dim } => {
                write!(f, "mat({p}")?;
                for g in gens {
                    write!(f, "; ")?;
                    for (i, row) in g.chunks(*dim).enumerate() {
                        if i > 0 {
                            write!(f, " | ")?;
                        }
                        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                        write!(f, "{}", cells.join(","))?;
                    }
                }
                write!(f, ")")
            }
            GroupExpr::Subgroup(parent, gens) => {
                write!(f, "sub({parent}; {})", gens.join(", "))
            }
            GroupExpr::Quotient(parent, normal) => write!(f, "quo({parent}; {normal})"),
            GroupExpr::Fiber {
                left,
                left_normal,
                right,
                right_normal,
            } => write!(f, "fib({left}; {left_normal}; {right}; {right_normal})"),
        }
    }
}

/// A built wreath product with its coordinate data. Point `(i, j)` of the
/// bottom copy `j` is global point `j*r + i`; the top group permutes `j`.
#[derive(Debug, Clone)]
pub struct WreathData {
    pub bottom: PermGroup,
    pub top: PermGroup,
    pub whole: PermGroup,
    pub r: usize,
    pub s: usize,
}

pub fn cyclic(m: usize) -> Result<PermGroup> {
    if m == 0 {
        return Err(GroupError::InvalidParameter("C(0) is not a group".into()));
    }
    if m == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let images: Vec<u16> = (0..m).map(|i| ((i + 1) % m) as u16).collect();
    PermGroup::new(vec![Permutation::from_images(images)?])
}

pub fn dihedral(m: usize) -> Result<PermGroup> {
    if m < 3 {
        return Err(GroupError::InvalidParameter(
            "D(m) needs m >= 3 for the degree-m action".into(),
        ));
    }
    let rot: Vec<u16> = (0..m).map(|i| ((i + 1) % m) as u16).collect();
    let refl: Vec<u16> = (0..m).map(|i| ((m - i) % m) as u16).collect();
    PermGroup::new(vec![
        Permutation::from_images(rot)?,
        Permutation::from_images(refl)?,
    ])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("S(0) is not supported".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let mut gens = vec![Permutation::parse_cycles("(1,2)", n)?];
    if n >= 3 {
        let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        gens.push(Permutation::parse_cycles(
            &format!("({})", cycle.join(",")),
            n,
        )?);
    }
    PermGroup::new(gens)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let mut gens = vec![Permutation::parse_cycles("(1,2,3)", n)?];
    if n > 3 {
        let start = if n % 2 == 0 { 2 } else { 1 };
        let cycle: Vec<String> = (start..=n).map(|i| i.to_string()).collect();
        gens.push(Permutation::parse_cycles(
            &format!("({})", cycle.join(",")),
            n,
        )?);
    }
    PermGroup::new(gens)
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion8() -> PermGroup {
    // points: 1, i, j, k, -1, -i, -j, -k; generators act by multiplication
    let li = Permutation::from_images(vec![1, 4, 3, 6, 5, 0, 7, 2]).unwrap();
    let lj = Permutation::from_images(vec![2, 7, 4, 1, 6, 3, 0, 5]).unwrap();
    PermGroup::new(vec![li, lj]).unwrap()
}

/// The Frobenius group of order 21 on 7 points.
pub fn frob21() -> Result<PermGroup> {
    let seven = Permutation::parse_cycles("(1,2,3,4,5,6,7)", 7)?;
    // x -> 2x mod 7 normalizes the 7-cycle and has order 3
    let three = Permutation::parse_cycles("(2,3,5)(4,7,6)", 7)?;
    PermGroup::new(vec![seven, three])
}

/// 3^(n/2):2 with trivial centre on 3·(n/2) points: one 3-cycle per block
/// and a single involution inverting every block at once.
pub fn b_group(n: usize) -> Result<PermGroup> {
    if n == 0 || n % 2 != 0 {
        return Err(GroupError::InvalidParameter(
            "B(n) needs positive even n".into(),
        ));
    }
    let m = n / 2;
    let degree = 3 * m;
    let mut gens = Vec::new();
    for j in 0..m {
        let base = 3 * j + 1; // 1-indexed for cycle text
        gens.push(Permutation::parse_cycles(
            &format!("({},{},{})", base, base + 1, base + 2),
            degree,
        )?);
    }
    let invert: Vec<String> = (0..m)
        .map(|j| format!("({},{})", 3 * j + 2, 3 * j + 3))
        .collect();
    gens.push(Permutation::parse_cycles(&invert.concat(), degree)?);
    PermGroup::new(gens)
}

/// Direct product acting on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let (da, db) = (a.degree(), b.degree());
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for x in 0..da {
            images[x] = g.apply(x) as u16;
        }
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for x in 0..db {
            images[da + x] = (da + g.apply(x)) as u16;
        }
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(gens)
}

/// Full wreath product `bottom ≀ top` in the imprimitive action on
/// `r*s` points.
pub fn wreath(bottom: &PermGroup, top: &PermGroup) -> Result<WreathData> {
    let r = bottom.degree();
    let s = top.degree();
    let degree = r * s;
    if degree == 0 || degree > u16::MAX as usize {
        return Err(GroupError::InvalidParameter(format!(
            "wreath degree {degree} out of range"
        )));
    }
    let mut gens = Vec::new();
    for j in 0..s {
        for g in bottom.generators() {
            let mut images: Vec<u16> = (0..degree as u16).collect();
            for i in 0..r {
                images[j * r + i] = (j * r + g.apply(i)) as u16;
            }
            gens.push(Permutation::from_images(images)?);
        }
    }
    for t in top.generators() {
        let mut images: Vec<u16> = vec![0; degree];
        for j in 0..s {
            for i in 0..r {
                images[j * r + i] = (t.apply(j) * r + i) as u16;
            }
        }
        gens.push(Permutation::from_images(images)?);
    }
    Ok(WreathData {
        bottom: bottom.clone(),
        top: top.clone(),
        whole: PermGroup::new(gens)?,
        r,
        s,
    })
}

/// Extraspecial plus-type group of order 32, transitive on 8 points.
///
/// The generators below were found once by `search_extraspecial_32` (kept as
/// a regeneration test): the first subgroup class of the Sylow 2-subgroup of
/// Sym(8) of order 32 that is transitive, has exponent 4, centre of order 2
/// and commutator subgroup equal to the centre.
pub fn d8_central_d8() -> Result<PermGroup> {
    let gens = [
        "(5,6)(7,8)",
        "(3,4)(7,8)",
        "(1,3)(2,4)(5,7)(6,8)",
        "(1,5)(2,6)(3,7)(4,8)",
    ];
    let gens = gens
        .iter()
        .map(|s| Permutation::parse_cycles(s, 8))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(gens)
}

/// Deterministic search used to pin down `d8_central_d8`: scans the subgroup
/// classes of the iterated wreath square of C2 for order-32 transitive
/// exponent-4 subgroups with centre of order 2 equal to the derived
/// subgroup, and returns the canonical representative of the first class.
pub fn search_extraspecial_32(limits: &Limits) -> Result<PermGroup> {
    let c2 = cyclic(2)?;
    let w = wreath(&c2, &c2)?;
    let w = wreath(&w.whole, &c2)?; // Sylow 2-subgroup of Sym(8), order 128
    let syl = w.whole;
    debug_assert_eq!(syl.order(limits)?, 128);
    let cat = structure::subgroup_lattice(&syl, limits)?;
    let e = syl.enumerated(limits)?;
    for class in &cat.all_classes {
        if class.order != 32 {
            continue;
        }
        let sub = structure::subgroup_from_indices(&syl, e, &class.rep_elements)?;
        if !sub.is_transitive() {
            continue;
        }
        let orders: Vec<u64> = class
            .rep_elements
            .iter()
            .map(|&i| e.element_order(i))
            .collect();
        if orders.iter().any(|&o| o > 4) || !orders.iter().any(|&o| o == 4) {
            continue;
        }
        let centre = structure::centre(&sub, limits)?;
        if centre.len() != 2 {
            continue;
        }
        let comm = derived_of(&sub, limits)?;
        if comm.len() != 2 {
            continue;
        }
        return Ok(sub);
    }
    Err(GroupError::InvalidParameter(
        "no extraspecial order-32 transitive subgroup found".into(),
    ))
}

fn derived_of(g: &PermGroup, limits: &Limits) -> Result<Vec<u32>> {
    let e = g.enumerated(limits)?;
    e.ensure_table(limits);
    let n = e.size() as u32;
    let mut gens = Vec::new();
    for a in 0..n {
        for b in 0..n {
            gens.push(e.mul(e.mul(e.inv(a), e.inv(b)), e.mul(a, b)));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    Ok(e.subgroup_closure(&gens))
}

/// Builds the group denoted by an expression.
pub fn build(expr: &GroupExpr, limits: &Limits) -> Result<PermGroup> {
    match expr {
        GroupExpr::Cyclic(m) => cyclic(*m),
        GroupExpr::Dihedral(m) => dihedral(*m),
        GroupExpr::Symmetric(n) => symmetric(*n),
        GroupExpr::Alternating(n) => alternating(*n),
        GroupExpr::Quaternion8 => Ok(quaternion8()),
        GroupExpr::DirectProduct(a, b) => {
            let ga = build(a, limits)?;
            let gb = build(b, limits)?;
            direct_product(&ga, &gb)
        }
        GroupExpr::Wreath(a, b) => {
            let ga = build(a, limits)?;
            let gb = build(b, limits)?;
            Ok(wreath(&ga, &gb)?.whole)
        }
        GroupExpr::GL(n, p) => matgroup::gl(*n, *p, limits)?.to_perm(limits),
        GroupExpr::SL(n, p) => matgroup::sl(*n, *p, limits)?.to_perm(limits),
        GroupExpr::Sp4_2 => matgroup::sp4_2(limits)?.to_perm(limits),
        GroupExpr::B(n) => b_group(*n),
        GroupExpr::FrobF21 => frob21(),
        GroupExpr::D8centralD8 => d8_central_d8(),
        GroupExpr::Matrix { p, gens, dim } => {
            let mats = gens
                .iter()
                .map(|g| matgroup::FpMatrix::new(*dim, *p, g.clone()))
                .collect::<Result<Vec<_>>>()?;
            matgroup::MatrixGroup::new(*dim, *p, mats)?.to_perm(limits)
        }
        GroupExpr::Subgroup(parent, gen_texts) => {
            let pg = build(parent, limits)?;
            let degree = pg.degree();
            let gens = gen_texts
                .iter()
                .map(|t| Permutation::parse_cycles(t, degree))
                .collect::<Result<Vec<_>>>()?;
            for g in &gens {
                if !pg.contains(g, limits)? {
                    return Err(GroupError::NotSubgroup(format!(
                        "{} is not an element of the parent group",
                        g.cycle_string()
                    )));
                }
            }
            if gens.is_empty() {
                Ok(PermGroup::trivial(degree))
            } else {
                PermGroup::new(gens)
            }
        }
        GroupExpr::Quotient(parent, normal) => {
            let pg = build(parent, limits)?;
            let ng = build(normal, limits)?;
            structure::quotient(&pg, &ng, limits)
        }
        GroupExpr::Fiber {
            left,
            left_normal,
            right,
            right_normal,
        } => {
            let h = build(left, limits)?;
            let nh = build(left_normal, limits)?;
            let k = build(right, limits)?;
            let nk = build(right_normal, limits)?;
            fiber_product(&h, &nh, &k, &nk, limits)
        }
    }
}

/// Subdirect product of `h × k` glued along an isomorphism of the quotients
/// `h/nh ≅ k/nk`. The isomorphism is found by deterministic backtracking; an
/// error is reported when the quotients are not isomorphic.
pub fn fiber_product(
    h: &PermGroup,
    nh: &PermGroup,
    k: &PermGroup,
    nk: &PermGroup,
    limits: &Limits,
) -> Result<PermGroup> {
    let qh = structure::quotient(h, nh, limits)?;
    let qk = structure::quotient(k, nk, limits)?;
    let (qh_e, qk_e) = (qh.enumerated(limits)?, qk.enumerated(limits)?);
    if qh_e.size() != qk_e.size() {
        return Err(GroupError::InvalidParameter(format!(
            "fiber quotients have different orders {} and {}",
            qh_e.size(),
            qk_e.size()
        )));
    }
    // map from h-elements to qh-elements via the coset action
    let (_, h_coset) = h.coset_action(nh, limits)?;
    let (_, k_coset) = k.coset_action(nk, limits)?;
    // the quotient permutation of an element is its action on cosets; build
    // index maps from group elements to quotient element indices
    let h_e = h.enumerated(limits)?;
    let k_e = k.enumerated(limits)?;
    let to_q = |e: &crate::group::Enumerated,
                coset: &[u32],
                q: &crate::group::Enumerated,
                idx: u32|
     -> u32 {
        let deg = q.element(0).degree();
        let mut images = vec![0u16; deg];
        for c in 0..deg {
            // coset c has some representative r with coset(r) = c; action of
            // the element by right multiplication
            images[c] = 0;
        }
        // find representative of each coset once (precomputed outside would
        // be faster; group orders here are small)
        let mut reps = vec![u32::MAX; deg];
        for (i, &c) in coset.iter().enumerate() {
            if reps[c as usize] == u32::MAX {
                reps[c as usize] = i as u32;
            }
        }
        for c in 0..deg {
            images[c] = coset[e.mul(reps[c], idx) as usize] as u16;
        }
        let p = Permutation::from_images(images).unwrap();
        q.index_of(&p).unwrap()
    };
    let iso = find_isomorphism(&qh, &qk, limits)?.ok_or_else(|| {
        GroupError::InvalidParameter("fiber quotients are not isomorphic".into())
    })?;
    // generators of the fiber product
    let mut gens: Vec<Permutation> = Vec::new();
    let id_k = Permutation::identity(k.degree());
    let id_h = Permutation::identity(h.degree());
    for n in nh.generators() {
        gens.push(glue(n, &id_k)?);
    }
    for n in nk.generators() {
        gens.push(glue(&id_h, n)?);
    }
    for hg in h.generators() {
        let hq = to_q(h_e, &h_coset, qh_e, h_e.index_of(hg).unwrap());
        let target = iso[hq as usize];
        // any preimage of target in k
        let kq_target = target;
        let pre = (0..k_e.size() as u32)
            .find(|&i| to_q(k_e, &k_coset, qk_e, i) == kq_target)
            .unwrap();
        gens.push(glue(hg, k_e.element(pre))?);
    }
    PermGroup::new(gens)
}

fn glue(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    let (da, db) = (a.degree(), b.degree());
    let mut images: Vec<u16> = Vec::with_capacity(da + db);
    for x in 0..da {
        images.push(a.apply(x) as u16);
    }
    for x in 0..db {
        images.push((da + b.apply(x)) as u16);
    }
    Permutation::from_images(images)
}

/// Deterministic isomorphism search between two small groups; returns the
/// element-index map from `a` to `b`, or None.
pub fn find_isomorphism(
    a: &PermGroup,
    b: &PermGroup,
    limits: &Limits,
) -> Result<Option<Vec<u32>>> {
    let ae = a.enumerated(limits)?;
    let be = b.enumerated(limits)?;
    if ae.size() != be.size() {
        return Ok(None);
    }
    ae.ensure_table(limits);
    be.ensure_table(limits);
    let n = ae.size() as u32;
    let a_gens: Vec<u32> = a
        .generators()
        .iter()
        .map(|g| ae.index_of(g).unwrap())
        .collect();
    // candidate images for each generator: same element order
    let orders_b: Vec<u64> = (0..n).map(|i| be.element_order(i)).collect();
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    for &g in &a_gens {
        let o = ae.element_order(g);
        let cand: Vec<u32> = (0..n).filter(|&i| orders_b[i as usize] == o).collect();
        if cand.is_empty() {
            return Ok(None);
        }
        candidates.push(cand);
    }
    let mut choice = vec![0usize; a_gens.len()];
    'outer: loop {
        let images: Vec<u32> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cand)| cand[c])
            .collect();
        if let Some(map) = try_extend_hom(ae, be, &a_gens, &images) {
            // bijectivity check
            let mut seen = vec![false; n as usize];
            let mut bij = true;
            for &m in &map {
                if seen[m as usize] {
                    bij = false;
                    break;
                }
                seen[m as usize] = true;
            }
            if bij {
                return Ok(Some(map));
            }
        }
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                break 'outer;
            }
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
    Ok(None)
}

/// Closes the generator assignment into a full homomorphism by breadth-first
/// multiplication; None on any conflict.
fn try_extend_hom(
    ae: &crate::group::Enumerated,
    be: &crate::group::Enumerated,
    a_gens: &[u32],
    images: &[u32],
) -> Option<Vec<u32>> {
    let n = ae.size();
    let mut map = vec![u32::MAX; n];
    map[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &img) in a_gens.iter().zip(images) {
            let xa = ae.mul(x, g);
            let xb = be.mul(map[x as usize], img);
            if map[xa as usize] == u32::MAX {
                map[xa as usize] = xb;
                queue.push(xa);
            } else if map[xa as usize] != xb {
                return None;
            }
        }
    }
    // all elements reached since the generators generate
    Some(map)
}

/// Large-subgroup test: `g` must respect the wreath block structure,
/// project onto the full bottom group in every coordinate, and onto the full
/// top group.
pub fn is_large_subgroup(g: &PermGroup, w: &WreathData, limits: &Limits) -> Result<bool> {
    let (r, s) = (w.r, w.s);
    if g.degree() != r * s {
        return Err(GroupError::BlockMismatch(format!(
            "degree {} does not match {}x{} wreath coordinates",
            g.degree(),
            r,
            s
        )));
    }
    let ge = g.enumerated(limits)?;
    let top_e = w.top.enumerated(limits)?;
    let bottom_e = w.bottom.enumerated(limits)?;

    // block image of each element, or error when blocks are not respected
    let mut top_perms: Vec<Permutation> = Vec::with_capacity(ge.size());
    for p in &ge.elements {
        let mut block_img = vec![0u16; s];
        for j in 0..s {
            let target = p.apply(j * r);
            let tj = target / r;
            for i in 0..r {
                if p.apply(j * r + i) / r != tj {
                    return Err(GroupError::BlockMismatch(format!(
                        "element {} does not permute the blocks",
                        p.cycle_string()
                    )));
                }
            }
            block_img[j] = tj as u16;
        }
        top_perms.push(Permutation::from_images(block_img).map_err(|_| {
            GroupError::BlockMismatch("element collapses two blocks".into())
        })?);
    }
    // top projection surjective?
    let mut top_seen: std::collections::HashSet<&Permutation> = top_perms.iter().collect();
    let top_full = top_e.size() == top_seen.len()
        && top_e.elements.iter().all(|t| top_seen.contains(t));
    top_seen.clear();
    if !top_full {
        return Ok(false);
    }
    // coordinate projections: elements stabilizing block i, restricted to it
    for j in 0..s {
        let mut images: std::collections::HashSet<Permutation> = Default::default();
        for (p, t) in ge.elements.iter().zip(&top_perms) {
            if t.apply(j) != j {
                continue;
            }
            let restricted: Vec<u16> =
                (0..r).map(|i| (p.apply(j * r + i) - j * r) as u16).collect();
            images.insert(Permutation::from_images(restricted)?);
        }
        if images.len() != bottom_e.size()
            || !bottom_e.elements.iter().all(|b| images.contains(b))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the catalog entry is small enough for exact lattice-based work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// order within the default lattice cap: full exact pipeline
    Full,
    /// order beyond the lattice cap: witness/sandwich arguments only
    Witness,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub expr: GroupExpr,
    pub expected_order: u64,
    /// Pinned exact invariable generation number, when known a priori.
    pub expected_di: Option<u64>,
    pub tier: Tier,
}

/// The fixed group inventory for the audit suites.
pub fn catalog() -> Vec<CatalogEntry> {
    use GroupExpr::*;
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut add = |name: &'static str, expr: GroupExpr, order: u64, di: Option<u64>| {
        let tier = if order <= 5000 { Tier::Full } else { Tier::Witness };
        entries.push(CatalogEntry {
            name,
            expr,
            expected_order: order,
            expected_di: di,
            tier,
        });
    };
    let fact = |n: u64| (1..=n).product::<u64>();

    add("S3", Symmetric(3), 6, Some(2));
    add("S4", Symmetric(4), 24, Some(2));
    add("S5", Symmetric(5), 120, Some(2));
    add("S6", Symmetric(6), 720, Some(3));
    add("S7", Symmetric(7), 5040, Some(2));
    add("A4", Alternating(4), 12, None);
    add("A5", Alternating(5), 60, Some(2));
    add("A6", Alternating(6), 360, Some(2));
    add("C1", Cyclic(1), 1, Some(0));
    for (name, m) in [
        ("C2", 2),
        ("C3", 3),
        ("C4", 4),
        ("C5", 5),
        ("C6", 6),
        ("C7", 7),
        ("C8", 8),
        ("C9", 9),
        ("C10", 10),
        ("C12", 12),
    ] {
        add(name, Cyclic(m), m as u64, Some(1));
    }
    // D(3) is the same permutation group as S(3) and is left out
    for (name, m) in [("D4", 4), ("D5", 5), ("D6", 6), ("D7", 7), ("D8", 8)] {
        add(name, Dihedral(m), 2 * m as u64, None);
    }
    add("Q8", Quaternion8, 8, Some(2));
    add(
        "C2wrC2",
        Wreath(Box::new(Cyclic(2)), Box::new(Cyclic(2))),
        8,
        None,
    );
    add(
        "C2wrC2wrC2",
        Wreath(
            Box::new(Wreath(Box::new(Cyclic(2)), Box::new(Cyclic(2)))),
            Box::new(Cyclic(2)),
        ),
        128,
        None,
    );
    add(
        "C2wrS3",
        Wreath(Box::new(Cyclic(2)), Box::new(Symmetric(3))),
        48,
        None,
    );
    add(
        "C3wrS3",
        Wreath(Box::new(Cyclic(3)), Box::new(Symmetric(3))),
        162,
        None,
    );
    add(
        "C4wrS3",
        Wreath(Box::new(Cyclic(4)), Box::new(Symmetric(3))),
        384,
        None,
    );
    add(
        "C5wrS3",
        Wreath(Box::new(Cyclic(5)), Box::new(Symmetric(3))),
        750,
        None,
    );
    add(
        "S3wrC2",
        Wreath(Box::new(Symmetric(3)), Box::new(Cyclic(2))),
        72,
        None,
    );
    add(
        "S4wrC2",
        Wreath(Box::new(Symmetric(4)), Box::new(Cyclic(2))),
        1152,
        None,
    );
    add(
        "A4wrC2",
        Wreath(Box::new(Alternating(4)), Box::new(Cyclic(2))),
        288,
        None,
    );
    add("B4", B(4), 18, Some(3));
    add("B6", B(6), 54, Some(4));
    add("GL(2,2)", GL(2, 2), 6, Some(2));
    add("GL(3,2)", GL(3, 2), 168, Some(2));
    add("F21", FrobF21, 21, Some(2));
    add("Sp4(2)", Sp4_2, 720, Some(3));
    add(
        "A5xA5",
        DirectProduct(Box::new(Alternating(5)), Box::new(Alternating(5))),
        3600,
        Some(2),
    );
    add("D8oD8", D8centralD8, 32, Some(4));
    add(
        "S3xS3",
        DirectProduct(Box::new(Symmetric(3)), Box::new(Symmetric(3))),
        36,
        None,
    );
    add(
        "S3xS3xS3",
        DirectProduct(
            Box::new(Symmetric(3)),
            Box::new(DirectProduct(Box::new(Symmetric(3)), Box::new(Symmetric(3)))),
        ),
        216,
        None,
    );
    // subdirect-product instances
    add(
        "S3xF21",
        DirectProduct(Box::new(Symmetric(3)), Box::new(FrobF21)),
        126,
        Some(2),
    );
    add(
        "S3xL32",
        DirectProduct(Box::new(Symmetric(3)), Box::new(GL(3, 2))),
        1008,
        Some(2),
    );
    add(
        "S3xS6",
        DirectProduct(Box::new(Symmetric(3)), Box::new(Symmetric(6))),
        4320,
        Some(3),
    );
    add(
        "L32xB4",
        DirectProduct(Box::new(GL(3, 2)), Box::new(B(4))),
        168 * 18,
        Some(3),
    );
    add(
        "S6xF21",
        DirectProduct(Box::new(Symmetric(6)), Box::new(FrobF21)),
        fact(6) * 21,
        Some(3),
    );
    // fiber product of S3 and S6 over the sign quotient C2
    add(
        "S3fibS6",
        Fiber {
            left: Box::new(Symmetric(3)),
            left_normal: Box::new(Alternating(3)),
            right: Box::new(Symmetric(6)),
            right_normal: Box::new(Alternating(6)),
        },
        2160,
        Some(3),
    );
    entries
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn wreath_c2_c2() {
        let c2 = cyclic(2).unwrap();
        let w = wreath(&c2, &c2).unwrap();
        assert_eq!(w.whole.degree(), 4);
        assert_eq!(w.whole.order(&lim()).unwrap(), 8);
        assert!(!w.whole.is_primitive().unwrap());
        let blocks = w.whole.minimal_block_system().unwrap().unwrap();
        assert_eq!(blocks[0].len(), 2);
    }

    #[test]
    fn wreath_order_formula() {
        let s3 = symmetric(3).unwrap();
        let c2 = cyclic(2).unwrap();
        let w = wreath(&c2, &s3).unwrap();
        assert_eq!(w.whole.order(&lim()).unwrap(), 8 * 6);
        let w2 = wreath(&s3, &c2).unwrap();
        assert_eq!(w2.whole.order(&lim()).unwrap(), 36 * 2);
        assert_eq!(w2.whole.degree(), 6);
    }

    #[test]
    fn b4_order_and_trivial_centre() {
        let b4 = b_group(4).unwrap();
        assert_eq!(b4.order(&lim()).unwrap(), 18);
        assert_eq!(structure::centre(&b4, &lim()).unwrap().len(), 1);
        let b6 = b_group(6).unwrap();
        assert_eq!(b6.order(&lim()).unwrap(), 54);
        assert_eq!(structure::centre(&b6, &lim()).unwrap().len(), 1);
    }

    #[test]
    fn frob21_is_transitive_order_21() {
        let f = frob21().unwrap();
        assert_eq!(f.order(&lim()).unwrap(), 21);
        assert!(f.is_transitive());
    }

    #[test]
    fn sp42_builds_degree_15() {
        let g = build(&GroupExpr::Sp4_2, &lim()).unwrap();
        assert_eq!(g.degree(), 15);
        assert_eq!(g.order(&lim()).unwrap(), 720);
    }

    #[test]
    fn quaternion_regular() {
        let q = quaternion8();
        assert_eq!(q.order(&lim()).unwrap(), 8);
        assert!(q.is_transitive());
        // orders: 1, one involution, six order-4 elements
        let e = q.enumerated(&lim()).unwrap();
        let mut orders: Vec<u64> = (0..8).map(|i| e.element_order(i)).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn large_subgroup_full_wreath_and_base() {
        let c2 = cyclic(2).unwrap();
        let w = wreath(&c2, &c2).unwrap();
        assert!(is_large_subgroup(&w.whole, &w, &lim()).unwrap());
        // base group alone: top projection trivial
        let base = PermGroup::new(vec![
            Permutation::parse_cycles("(1,2)", 4).unwrap(),
            Permutation::parse_cycles("(3,4)", 4).unwrap(),
        ])
        .unwrap();
        assert!(!is_large_subgroup(&base, &w, &lim()).unwrap());
    }

    #[test]
    fn large_subgroup_b6_over_trivial_top() {
        // B(6) inside Sym(3)^3: coordinate projections all of S3, top trivial
        let s3 = symmetric(3).unwrap();
        let trivial3 = PermGroup::trivial(3);
        let w = wreath(&s3, &trivial3).unwrap();
        let b6 = b_group(6).unwrap();
        assert!(is_large_subgroup(&b6, &w, &lim()).unwrap());
    }

    #[test]
    fn catalog_orders_match() {
        for entry in catalog() {
            if entry.expected_order > 10_000 {
                continue; // checked in the audit, not in unit tests
            }
            let g = build(&entry.expr, &lim()).unwrap();
            assert_eq!(
                g.order(&lim()).unwrap(),
                entry.expected_order,
                "order mismatch for {}",
                entry.name
            );
        }
    }

    #[test]
    fn fiber_product_s3_s6_over_c2() {
        let h = symmetric(3).unwrap();
        let nh = alternating(3).unwrap();
        let k = symmetric(6).unwrap();
        let nk = alternating(6).unwrap();
        let g = fiber_product(&h, &nh, &k, &nk, &lim()).unwrap();
        assert_eq!(g.order(&lim()).unwrap(), 6 * 720 / 2);
        // subdirect: both projections surjective; elements have matching signs
        let e = g.enumerated(&lim()).unwrap();
        for p in &e.elements {
            let left: Vec<u16> = (0..3).map(|i| p.apply(i) as u16).collect();
            let right: Vec<u16> = (3..9).map(|i| (p.apply(i) - 3) as u16).collect();
            let lp = Permutation::from_images(left).unwrap();
            let rp = Permutation::from_images(right).unwrap();
            assert_eq!(lp.is_even(), rp.is_even());
        }
    }

    #[test]
    fn isomorphism_finder_on_quotients() {
        let s4 = symmetric(4).unwrap();
        let v4 = PermGroup::new(vec![
            Permutation::parse_cycles("(1,2)(3,4)", 4).unwrap(),
            Permutation::parse_cycles("(1,3)(2,4)", 4).unwrap(),
        ])
        .unwrap();
        let q = structure::quotient(&s4, &v4, &lim()).unwrap();
        let s3 = symmetric(3).unwrap();
        assert!(find_isomorphism(&q, &s3, &lim()).unwrap().is_some());
        let c6 = cyclic(6).unwrap();
        assert!(find_isomorphism(&c6, &s3, &lim()).unwrap().is_none());
    }

    #[test]
    fn expr_display_roundtrip_examples() {
        let e = GroupExpr::Wreath(Box::new(GroupExpr::Cyclic(2)), Box::new(GroupExpr::Symmetric(3)));
        assert_eq!(e.to_string(), "wr(C(2),S(3))");
        let e = GroupExpr::DirectProduct(
            Box::new(GroupExpr::Alternating(5)),
            Box::new(GroupExpr::Alternating(5)),
        );
        assert_eq!(e.to_string(), "dp(A(5),A(5))");
    }

    #[test]
    fn extraspecial_search_regenerates_frozen_generators() {
        let found = search_extraspecial_32(&lim()).unwrap();
        let frozen = d8_central_d8().unwrap();
        assert_eq!(found.order(&lim()).unwrap(), 32);
        assert_eq!(frozen.order(&lim()).unwrap(), 32);
        // the frozen group must satisfy the same defining properties
        for g in [&found, &frozen] {
            assert!(g.is_transitive());
            let e = g.enumerated(&lim()).unwrap();
            let orders: Vec<u64> = (0..32).map(|i| e.element_order(i)).collect();
            assert!(orders.iter().all(|&o| o <= 4));
            assert!(orders.contains(&4));
            assert_eq!(structure::centre(g, &lim()).unwrap().len(), 2);
        }
        // and the search result must be the frozen group up to relabeling:
        // same element set once both live in Sym(8)
        let fe = found.enumerated(&lim()).unwrap();
        let ze = frozen.enumerated(&lim()).unwrap();
        let mut a: Vec<&Permutation> = fe.elements.iter().collect();
        let mut b: Vec<&Permutation> = ze.elements.iter().collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
}
