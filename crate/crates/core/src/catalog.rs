//! Built-in fixture groups: the worked examples plus all groups of order
//! at most 12 (and a few larger ones for randomized suites).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Perm, Subgroup};
use crate::Limits;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub subgroups: BTreeMap<String, Subgroup>,
}

impl CatalogEntry {
    fn plain(name: &str, group: FiniteGroup) -> Self {
        CatalogEntry {
            name: name.to_string(),
            group: Arc::new(group),
            subgroups: BTreeMap::new(),
        }
    }

    fn with_subgroup(mut self, name: &str, seed: &[usize]) -> Self {
        let s = Subgroup::generated(&self.group, seed).expect("seed in range");
        self.subgroups.insert(name.to_string(), s);
        self
    }
}

fn limits() -> Limits {
    Limits::default()
}

pub fn cyclic(n: usize, label: &str) -> Result<CatalogEntry> {
    let group = if n == 1 {
        FiniteGroup::from_permutations(vec![], Some(label.into()), &limits())?
    } else {
        let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
        FiniteGroup::from_permutations(vec![rot], Some(label.into()), &limits())?
    };
    Ok(CatalogEntry::plain(label, group))
}

/// Dihedral group of order `2n` on `n` points (`n >= 3`).
pub fn dihedral(n: usize, label: &str) -> Result<CatalogEntry> {
    if n < 3 {
        return Err(Error::InvalidInput("dihedral builder needs n >= 3".into()));
    }
    let rot: Perm = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Perm = (0..n).map(|i| (n - i) % n).collect();
    let group = FiniteGroup::from_permutations(vec![rot.clone(), refl.clone()], Some(label.into()), &limits())?;
    let r = group.elem_index_of_perm(&rot).unwrap();
    let c = group.elem_index_of_perm(&refl).unwrap();
    let r2 = group.mul(r, r);
    let cr = group.mul(c, r);
    let mut entry = CatalogEntry::plain(label, group)
        .with_subgroup("rot", &[r])
        .with_subgroup("refl", &[c]);
    if n == 4 {
        entry = entry
            .with_subgroup("c4", &[r])
            .with_subgroup("center", &[r2])
            .with_subgroup("klein", &[c, r2])
            .with_subgroup("klein2", &[cr, r2]);
    }
    Ok(entry)
}

pub fn symmetric3() -> CatalogEntry {
    let rot: Perm = vec![1, 2, 0];
    let swap: Perm = vec![1, 0, 2];
    let group =
        FiniteGroup::from_permutations(vec![rot.clone(), swap.clone()], Some("s3".into()), &limits()).unwrap();
    let r = group.elem_index_of_perm(&rot).unwrap();
    let t = group.elem_index_of_perm(&swap).unwrap();
    CatalogEntry::plain("s3", group)
        .with_subgroup("c3", &[r])
        .with_subgroup("c2", &[t])
}

pub fn symmetric4() -> CatalogEntry {
    let gens: Vec<Perm> = vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]];
    let group = FiniteGroup::from_permutations(gens, Some("s4".into()), &limits()).unwrap();
    CatalogEntry::plain("s4", group)
}

pub fn alternating4() -> CatalogEntry {
    let gens: Vec<Perm> = vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]];
    let group = FiniteGroup::from_permutations(gens, Some("a4".into()), &limits()).unwrap();
    CatalogEntry::plain("a4", group)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, label: &str) -> Result<CatalogEntry> {
    let (na, nb) = (a.order(), b.order());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut table = vec![vec![0; na * nb]; na * nb];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    table[idx(i1, j1)][idx(i2, j2)] = idx(a.mul(i1, i2), b.mul(j1, j2));
                }
            }
        }
    }
    let group = FiniteGroup::from_table(table, Some(label.into()), &limits())?;
    Ok(CatalogEntry::plain(label, group))
}

/// Quaternion group of order 8: indices encode `(axis, sign)` with axes
/// `1, i, j, k`, so element `2a + s` is `axis_a` times `(-1)^s`.
pub fn quaternion8() -> CatalogEntry {
    // axis multiplication: (axis, extra sign)
    let axis_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) => (x, 0),
            (x, 0) => (x, 0),
            (x, y) if x == y => (0, 1),
            (1, 2) => (3, 0),
            (2, 1) => (3, 1),
            (2, 3) => (1, 0),
            (3, 2) => (1, 1),
            (3, 1) => (2, 0),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let mut table = vec![vec![0; 8]; 8];
    for x in 0..8 {
        for y in 0..8 {
            let (ax, sx) = (x / 2, x % 2);
            let (ay, sy) = (y / 2, y % 2);
            let (az, extra) = axis_mul(ax, ay);
            table[x][y] = az * 2 + (sx + sy + extra) % 2;
        }
    }
    let group = FiniteGroup::from_table(table, Some("q8".into()), &limits()).unwrap();
    let entry = CatalogEntry::plain("q8", group);
    entry.with_subgroup("center", &[1]).with_subgroup("i", &[2])
}

/// Dicyclic group of order `4n`: elements `a^i` (index `i`) and `a^i b`
/// (index `2n + i`), with `a^(2n) = 1`, `b^2 = a^n`, `b a b^-1 = a^-1`.
pub fn dicyclic(n: usize, label: &str) -> Result<CatalogEntry> {
    let m = 2 * n;
    let size = 4 * n;
    let mut table = vec![vec![0; size]; size];
    for x in 0..size {
        for y in 0..size {
            let (xi, xb) = if x < m { (x, false) } else { (x - m, true) };
            let (yi, yb) = if y < m { (y, false) } else { (y - m, true) };
            table[x][y] = match (xb, yb) {
                (false, false) => (xi + yi) % m,
                (false, true) => m + (xi + yi) % m,
                (true, false) => m + (xi + m - yi) % m,
                (true, true) => (xi + m - yi + n) % m,
            };
        }
    }
    let group = FiniteGroup::from_table(table, Some(label.into()), &limits())?;
    Ok(CatalogEntry::plain(label, group))
}

/// `GL_2(F_2)`: invertible 2x2 matrices over the field with two elements,
/// indexed by the sorted entry tuples `(a, b, c, d)`.
pub fn gl2f2() -> CatalogEntry {
    let mats = gl2f2_matrices();
    let n = mats.len();
    let index_of = |m: &(u8, u8, u8, u8)| mats.binary_search(m).unwrap();
    let mut table = vec![vec![0; n]; n];
    for (x, p) in mats.iter().enumerate() {
        for (y, q) in mats.iter().enumerate() {
            table[x][y] = index_of(&mat_mul(p, q));
        }
    }
    let group = FiniteGroup::from_table(table, Some("gl2f2".into()), &limits()).unwrap();
    let upper: Vec<usize> = mats
        .iter()
        .enumerate()
        .filter(|(_, m)| m.2 == 0)
        .map(|(i, _)| i)
        .collect();
    let lower: Vec<usize> = mats
        .iter()
        .enumerate()
        .filter(|(_, m)| m.1 == 0)
        .map(|(i, _)| i)
        .collect();
    CatalogEntry::plain("gl2f2", group)
        .with_subgroup("borel_upper", &upper)
        .with_subgroup("borel_lower", &lower)
}

/// The opposite group of `GL_2(F_2)` on the same element indexing; the
/// transpose map is an isomorphism onto it carrying the upper Borel to the
/// lower one.
pub fn gl2f2_op() -> CatalogEntry {
    let base = gl2f2();
    let group = Arc::new(base.group.opposite(Some("gl2f2_op".into())));
    let mut subgroups = BTreeMap::new();
    for (name, s) in &base.subgroups {
        subgroups.insert(
            name.clone(),
            Subgroup::new(Arc::clone(&group), s.elements().iter().copied()).unwrap(),
        );
    }
    CatalogEntry {
        name: "gl2f2_op".into(),
        group,
        subgroups,
    }
}

fn gl2f2_matrices() -> Vec<(u8, u8, u8, u8)> {
    let mut mats = Vec::new();
    for a in 0..2u8 {
        for b in 0..2u8 {
            for c in 0..2u8 {
                for d in 0..2u8 {
                    if (a * d + b * c) % 2 == 1 {
                        mats.push((a, b, c, d));
                    }
                }
            }
        }
    }
    mats.sort_unstable();
    mats
}

fn mat_mul(p: &(u8, u8, u8, u8), q: &(u8, u8, u8, u8)) -> (u8, u8, u8, u8) {
    (
        (p.0 * q.0 + p.1 * q.2) % 2,
        (p.0 * q.1 + p.1 * q.3) % 2,
        (p.2 * q.0 + p.3 * q.2) % 2,
        (p.2 * q.1 + p.3 * q.3) % 2,
    )
}

/// The full built-in catalog: every group of order at most 12, the worked
/// example fixtures, and a few larger groups for randomized suites.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let c2 = cyclic(2, "c2").unwrap();
    let c3 = cyclic(3, "c3").unwrap();
    let c4 = cyclic(4, "c4").unwrap();
    let c6 = cyclic(6, "c6").unwrap();
    let mut entries = vec![
        cyclic(1, "trivial").unwrap(),
        c2.clone(),
        c3.clone(),
        c4.clone(),
        direct_product(&c2.group, &c2.group, "klein").unwrap(),
        cyclic(5, "c5").unwrap(),
        c6.clone(),
        symmetric3(),
        cyclic(7, "c7").unwrap(),
        cyclic(8, "c8").unwrap(),
        direct_product(&c2.group, &c4.group, "c2xc4").unwrap(),
        elementary_abelian8(&c2),
        dihedral(4, "d8").unwrap(),
        quaternion8(),
        cyclic(9, "c9").unwrap(),
        direct_product(&c3.group, &c3.group, "c3xc3").unwrap(),
        cyclic(10, "c10").unwrap(),
        dihedral(5, "d10").unwrap(),
        cyclic(11, "c11").unwrap(),
        cyclic(12, "c12").unwrap(),
        direct_product(&c2.group, &c6.group, "c2xc6").unwrap(),
        dihedral(6, "d12").unwrap(),
        alternating4(),
        dicyclic(3, "dic3").unwrap(),
        gl2f2(),
        gl2f2_op(),
        // larger ambients for the randomized twisted-action suite
        dihedral(8, "d16").unwrap(),
        symmetric4(),
    ];
    entries.sort_by_key(|a| (a.group.order(), a.name.clone()));
    entries
}

fn elementary_abelian8(c2: &CatalogEntry) -> CatalogEntry {
    let v4 = direct_product(&c2.group, &c2.group, "v4").unwrap();
    direct_product(&v4.group, &c2.group, "c2xc2xc2").unwrap()
}

pub fn builtin_entry(name: &str) -> Option<CatalogEntry> {
    builtin_catalog().into_iter().find(|e| e.name == name)
}

pub fn builtin_group(name: &str) -> Option<Arc<FiniteGroup>> {
    builtin_entry(name).map(|e| e.group)
}

pub fn builtin_names() -> Vec<String> {
    builtin_catalog().into_iter().map(|e| e.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let expected = [
            ("trivial", 1),
            ("klein", 4),
            ("s3", 6),
            ("gl2f2", 6),
            ("gl2f2_op", 6),
            ("d8", 8),
            ("q8", 8),
            ("a4", 12),
            ("dic3", 12),
            ("d16", 16),
            ("s4", 24),
        ];
        for (name, order) in expected {
            assert_eq!(builtin_group(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn q8_has_one_involution() {
        let q8 = builtin_group("q8").unwrap();
        let invs = (0..8).filter(|&x| q8.elem_order(x) == 2).count();
        assert_eq!(invs, 1);
    }

    #[test]
    fn dic3_element_orders() {
        let g = builtin_group("dic3").unwrap();
        assert_eq!((0..12).filter(|&x| g.elem_order(x) == 4).count(), 6);
        assert_eq!((0..12).filter(|&x| g.elem_order(x) == 2).count(), 1);
    }

    #[test]
    fn gl2f2_borels_have_order_two_and_transpose_swaps_them() {
        let e = gl2f2();
        let upper = e.subgroups.get("borel_upper").unwrap();
        let lower = e.subgroups.get("borel_lower").unwrap();
        assert_eq!(upper.len(), 2);
        assert_eq!(lower.len(), 2);
        assert!(!upper.set_eq(lower));
    }

    #[test]
    fn d8_named_subgroups() {
        let e = dihedral(4, "d8").unwrap();
        assert_eq!(e.subgroups.get("klein").unwrap().len(), 4);
        assert_eq!(e.subgroups.get("klein2").unwrap().len(), 4);
        assert_eq!(e.subgroups.get("c4").unwrap().len(), 4);
        assert_eq!(e.subgroups.get("center").unwrap().len(), 2);
        assert!(!e.subgroups.get("klein").unwrap().set_eq(e.subgroups.get("klein2").unwrap()));
    }
}
