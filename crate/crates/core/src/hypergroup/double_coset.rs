use std::collections::BTreeSet;
use std::marker::PhantomData;

use super::Hypergroup;
use crate::descriptor::{BaseModel, ModelDescriptor};
use crate::error::{Error, Result};
use crate::measure::{Measure, EPS_MASS_DISCRETE};
use crate::scalar::Weight;
use crate::space::{Coord, Ground, SpaceId};

/// A finite group given by its multiplication table: `mul[a][b]` is the index
/// of `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    pub fn new(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if mul.iter().any(|row| row.len() != n || row.iter().any(|&g| g >= n)) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n} with entries below {n}")));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| mul[g][h] == identity && mul[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupTable { mul, identity, inverse })
    }

    /// The symmetric group on `n` letters; elements are permutations in
    /// lexicographic order (index 0 is the identity) and `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        loop {
            perms.push(p.clone());
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else { break };
            let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
            p.swap(i - 1, j);
            p[i..].reverse();
        }
        let index = |q: &[usize]| perms.iter().position(|r| r == q).expect("closed under composition");
        let mul = perms.iter().map(|s| perms.iter().map(|t| index(&t.iter().map(|&i| s[i]).collect::<Vec<_>>())).collect()).collect();
        GroupTable::new(mul).expect("symmetric group table is valid")
    }

    /// The cyclic group `ℤn` with element `k` at index `k`.
    pub fn cyclic(n: usize) -> Self {
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(mul).expect("cyclic group table is valid")
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set.into_iter().collect()
    }
}

/// The double coset hypergroup `G//K`. Points are double cosets, with the
/// identity coset `K` first and the rest ordered by smallest element.
#[derive(Clone, Debug)]
pub struct DoubleCoset<S> {
    space: SpaceId,
    group: GroupTable,
    subgroup: Vec<usize>,
    class_of: Vec<u32>,
    sizes: Vec<u64>,
    // kernel[i][j] = (class, count) with weight count / (|Ci| |Cj|)
    kernel: Vec<Vec<Vec<(u32, u64)>>>,
    involution: Vec<u32>,
    _scalar: PhantomData<fn() -> S>,
}

pub fn finite_double_coset<S: Weight>(group: GroupTable, subgroup: &[usize]) -> Result<DoubleCoset<S>> {
    let n = group.order();
    let sub: BTreeSet<usize> = subgroup.iter().copied().collect();
    if sub.len() != subgroup.len() || sub.iter().any(|&k| k >= n) {
        return Err(Error::InvalidGroup("subgroup indices must be distinct group elements".into()));
    }
    if !sub.contains(&group.identity()) {
        return Err(Error::InvalidGroup("subgroup must contain the identity".into()));
    }
    if sub.iter().any(|&a| sub.iter().any(|&b| !sub.contains(&group.mul(a, b)))) {
        return Err(Error::InvalidGroup("subgroup is not closed under multiplication".into()));
    }

    let mut cosets: Vec<BTreeSet<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for x in std::iter::once(group.identity()).chain(0..n) {
        if seen[x] {
            continue;
        }
        let c: BTreeSet<usize> =
            sub.iter().flat_map(|&a| sub.iter().map(move |&b| (a, b))).map(|(a, b)| group.mul(group.mul(a, x), b)).collect();
        c.iter().for_each(|&g| seen[g] = true);
        cosets.push(c);
    }
    cosets[1..].sort_by_key(|c| *c.first().expect("nonempty coset"));
    let mut class_of = vec![0u32; n];
    for (i, c) in cosets.iter().enumerate() {
        c.iter().for_each(|&g| class_of[g] = i as u32);
    }
    let m = cosets.len();
    let sizes: Vec<u64> = cosets.iter().map(|c| c.len() as u64).collect();

    let mut kernel = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut counts = vec![0u64; m];
            for &a in &cosets[i] {
                for &b in &cosets[j] {
                    counts[class_of[group.mul(a, b)] as usize] += 1;
                }
            }
            kernel[i][j] = counts.into_iter().enumerate().filter(|&(_, c)| c > 0).map(|(k, c)| (k as u32, c)).collect();
        }
    }
    for i in 0..m {
        for j in 0..i {
            let defect = tv_between(&kernel[i][j], &kernel[j][i], (sizes[i] * sizes[j]) as f64);
            if defect > 1e-12 {
                return Err(Error::NonCommutative { x: i, y: j, defect });
            }
        }
    }
    let involution = cosets.iter().map(|c| class_of[group.inverse(*c.first().expect("nonempty coset"))]).collect();
    let space = SpaceId::new(format!("double_coset[n={n};k={subgroup:?}]"));
    Ok(DoubleCoset { space, group, subgroup: sub.into_iter().collect(), class_of, sizes, kernel, involution, _scalar: PhantomData })
}

fn tv_between(a: &[(u32, u64)], b: &[(u32, u64)], denom: f64) -> f64 {
    let mut out = 0.0;
    let keys: BTreeSet<u32> = a.iter().chain(b).map(|&(k, _)| k).collect();
    for k in keys {
        let wa = a.iter().find(|e| e.0 == k).map_or(0, |e| e.1) as f64;
        let wb = b.iter().find(|e| e.0 == k).map_or(0, |e| e.1) as f64;
        out += (wa - wb).abs() / denom;
    }
    out
}

impl<S> DoubleCoset<S> {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// The double coset containing group element `g`.
    pub fn coset_of(&self, g: usize) -> Coord {
        Coord::Index(self.class_of[g])
    }

    pub fn coset_size(&self, i: usize) -> u64 {
        self.sizes[i]
    }
}

impl<S: Weight> Hypergroup<S> for DoubleCoset<S> {
    fn label(&self) -> String {
        self.space.to_string()
    }

    fn space(&self) -> &SpaceId {
        &self.space
    }

    fn ground(&self) -> Ground {
        Ground::Finite { size: self.len() as u32 }
    }

    fn identity(&self) -> Coord {
        Coord::Index(0)
    }

    fn involution(&self, x: &Coord) -> Coord {
        match x.label() {
            Some(i) if (i as usize) < self.len() => Coord::Index(self.involution[i as usize]),
            _ => x.clone(),
        }
    }

    fn kernel(&self, x: &Coord, y: &Coord) -> Result<Measure<S>> {
        self.ground().check(x)?;
        self.ground().check(y)?;
        let (i, j) = (x.label().unwrap_or(0) as usize, y.label().unwrap_or(0) as usize);
        let denom = self.sizes[i] * self.sizes[j];
        let entries = self.kernel[i][j].iter().map(|&(k, c)| (Coord::Index(k), S::from_ratio(c, denom))).collect();
        Ok(Measure::from_sorted(self.space.clone(), entries))
    }

    fn haar(&self, x: &Coord) -> S {
        let i = x.label().unwrap_or(0) as usize;
        S::from_ratio(self.sizes[i], self.sizes[0])
    }

    fn mass_tolerance(&self) -> f64 {
        EPS_MASS_DISCRETE
    }

    fn descriptor(&self) -> ModelDescriptor {
        ModelDescriptor::Base(BaseModel::DoubleCoset { table: self.group.table().to_vec(), subgroup: self.subgroup.clone() })
    }
}
