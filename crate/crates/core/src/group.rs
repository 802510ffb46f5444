//! Finite groups given by multiplication tables, and a small catalog.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
}

/// Orders above this are accepted without the exhaustive associativity check.
pub const ASSOCIATIVITY_CHECK_MAX: usize = 24;
const MAX_ORDER: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a table: rows and columns are permutations, an identity
    /// exists, and (up to order 24) multiplication is associative.
    pub fn from_table(
        name: impl Into<String>,
        labels: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let n = table.len();
        let bad = |m: &str| GroupError::InvalidTable(m.to_string());
        if n == 0 || labels.len() != n {
            return Err(bad("empty table or label count mismatch"));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(bad("table is not square"));
            }
            flat.extend_from_slice(row);
        }
        if flat.iter().any(|&x| x >= n) {
            return Err(bad("entry out of range"));
        }
        for i in 0..n {
            let row: BTreeSet<usize> = (0..n).map(|j| flat[i * n + j]).collect();
            let col: BTreeSet<usize> = (0..n).map(|j| flat[j * n + i]).collect();
            if row.len() != n || col.len() != n {
                return Err(bad("row or column is not a permutation"));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or_else(|| bad("no identity element"))?;
        let inverse: Vec<usize> = (0..n)
            .map(|x| (0..n).find(|&y| flat[x * n + y] == identity).unwrap())
            .collect();
        if n <= ASSOCIATIVITY_CHECK_MAX {
            for a in 0..n {
                for b in 0..n {
                    let ab = flat[a * n + b];
                    for c in 0..n {
                        if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                            return Err(bad("multiplication is not associative"));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), labels, table: flat, identity, inverse })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let t = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(t, a), b)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest subgroup containing `gens`, as a sorted index list.
    pub fn generated_subgroup<I: IntoIterator<Item = usize>>(&self, gens: I) -> Vec<usize> {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if seen.insert(y) {
                    queue.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        (0..self.order()).all(|g| {
            set.iter()
                .all(|&x| set.contains(&self.mul(self.mul(self.inv(g), x), g)))
        })
    }

    /// The derived subgroup `G'`.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let comms: BTreeSet<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.generated_subgroup(comms)
    }

    /// Subgroup generated by all elements whose order is a power of `p`,
    /// plus whether it is normal.
    pub fn p_subgroup_closure(&self, p: u64) -> (Vec<usize>, bool) {
        let p_elements = (0..self.order()).filter(|&g| is_power_of(self.element_order(g) as u64, p));
        let h = self.generated_subgroup(p_elements);
        let normal = self.is_normal(&h);
        (h, normal)
    }

    /// Restriction of the table to a subgroup.
    pub fn subgroup(&self, h: &[usize], name: impl Into<String>) -> Result<FiniteGroup, GroupError> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotASubgroup);
        }
        let pos: BTreeMap<usize, usize> = h.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let table = h
            .iter()
            .map(|&a| h.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        let labels = h.iter().map(|&g| self.labels[g].clone()).collect();
        FiniteGroup::from_table(name, labels, table)
    }

    /// `G/H` for normal `H`. Cosets are listed by their least representative;
    /// the second component maps each element of `G` to its coset.
    pub fn quotient(&self, h: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        if !self.is_subgroup(h) {
            return Err(GroupError::NotASubgroup);
        }
        if !self.is_normal(h) {
            return Err(GroupError::NotNormal);
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] == usize::MAX {
                let c = reps.len();
                reps.push(g);
                for &x in h {
                    coset_of[self.mul(g, x)] = c;
                }
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let labels = reps.iter().map(|&g| format!("{}H", self.labels[g])).collect();
        let q = FiniteGroup::from_table(format!("{}/H", self.name), labels, table)?;
        Ok((q, coset_of))
    }

    pub fn is_p_group(&self, elements: &[usize], p: u64) -> bool {
        is_power_of(elements.len() as u64, p)
    }

    /// Direct product, elements ordered `(a, b)` with `b` fastest.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order(), other.order());
        let mut labels = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
            }
        }
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(format!("{}x{}", self.name, other.name), labels, table)
            .expect("direct product of groups is a group")
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(format!("C{n}"), labels, table).expect("cyclic group")
}

/// Dihedral group of order `2n`; element `a + n b` is `r^a s^b`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let label = |a: usize, b: usize| -> String {
        let r = match a {
            0 => String::new(),
            1 => "r".to_string(),
            _ => format!("r{a}"),
        };
        match (r.is_empty(), b) {
            (true, 0) => "1".to_string(),
            (_, 0) => r,
            (_, _) => format!("{r}s"),
        }
    };
    let labels = (0..2 * n).map(|x| label(x % n, x / n)).collect();
    let table = (0..2 * n)
        .map(|x| {
            (0..2 * n)
                .map(|y| {
                    let (a, b) = (x % n, x / n);
                    let (c, d) = (y % n, y / n);
                    let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                    rot + n * ((b + d) % 2)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(format!("D{n}"), labels, table).expect("dihedral group")
}

/// Quaternion group, listed `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion() -> FiniteGroup {
    // unit quaternion basis index (0=1,1=i,2=j,3=k) and sign
    const MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let decode = |x: usize| (x / 2, x % 2 == 1);
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (u, su) = decode(x);
                    let (v, sv) = decode(y);
                    let (w, sw) = MUL[u][v];
                    2 * w + usize::from(su ^ sv ^ sw)
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table("Q8", labels, table).expect("quaternion group")
}

/// Symmetric group on `n` points; permutations in lexicographic order,
/// composed right to left.
pub fn symmetric(n: usize) -> FiniteGroup {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permutations_lex(&mut (0..n).collect(), 0, &mut perms);
    perms.sort();
    let pos: BTreeMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let labels = perms
        .iter()
        .map(|p| {
            if p.iter().enumerate().all(|(i, &x)| i == x) {
                "1".to_string()
            } else {
                p.iter().map(|x| char::from(b'1' + *x as u8)).collect()
            }
        })
        .collect();
    let table = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| pos[&t.iter().map(|&x| s[x]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    FiniteGroup::from_table(format!("S{n}"), labels, table).expect("symmetric group")
}

fn permutations_lex(cur: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for i in k..cur.len() {
        cur.swap(k, i);
        permutations_lex(cur, k + 1, out);
        cur.swap(k, i);
    }
}

/// Looks up `C<n>` (n <= 16), `D<n>` (2n <= 16), `Q8`, `S3`, `S4`, and
/// `x`-separated direct products such as `C2xC2`.
pub fn group_catalog(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::UnknownGroup(name.to_string());
    let name = name.trim();
    if name.contains('x') {
        let mut parts = name.split('x').map(group_catalog);
        let first = parts.next().ok_or_else(unknown)?.map_err(|_| unknown())?;
        let mut acc = first;
        for part in parts {
            acc = acc.direct_product(&part.map_err(|_| unknown())?);
            if acc.order() > MAX_ORDER {
                return Err(unknown());
            }
        }
        return Ok(acc);
    }
    let num = |prefix: char| -> Option<usize> { name.strip_prefix(prefix)?.parse().ok() };
    match name {
        "Q8" => return Ok(quaternion()),
        "S3" => return Ok(symmetric(3)),
        "S4" => return Ok(symmetric(4)),
        _ => {}
    }
    if let Some(n) = num('C') {
        if (1..=16).contains(&n) {
            return Ok(cyclic(n));
        }
    }
    if let Some(n) = num('D') {
        if (1..=8).contains(&n) {
            return Ok(dihedral(n));
        }
    }
    Err(unknown())
}
