//! Finite groups given by a validated multiplication table.

use std::collections::BTreeMap;
use std::fmt;

use super::GroupError;

/// Largest order accepted by the permutation-group constructors.
const MAX_PERMUTATION_ORDER: usize = 720;

/// A finite group on the indices `0..order`.
///
/// `table[i * order + j]` holds the index of `i·j`. The table is checked to be a
/// Latin square and associative before a value of this type is handed out.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// The cyclic group `ℤ_n` with `i·j = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder("cyclic group of order 0".into()));
        }
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i + j) % n))
            .collect();
        Ok(Self::from_validated(format!("cyclic:{n}"), n, table))
    }

    /// The elementary abelian group `(ℤ/2)^k` on codes `0..2^k` with bitwise xor.
    pub fn boolean(k: u32) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::InvalidOrder("boolean group of rank 0".into()));
        }
        // Tables are materialized, so keep them to a sane size.
        if k > 12 {
            return Err(GroupError::InvalidOrder(format!(
                "boolean group of rank {k} is too large for a Cayley table"
            )));
        }
        let n = 1usize << k;
        let table = (0..n).flat_map(|i| (0..n).map(move |j| i ^ j)).collect();
        Ok(Self::from_validated(format!("boolean:{k}"), n, table))
    }

    /// The dihedral group of order `2n`, realized as permutations of the vertices of
    /// a regular `n`-gon.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n < 3 {
            return Err(GroupError::InvalidOrder(format!(
                "dihedral group needs at least 3 vertices, got {n}"
            )));
        }
        if 2 * n > MAX_PERMUTATION_ORDER {
            return Err(GroupError::InvalidOrder(format!("dihedral:{n} is too large")));
        }
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        let perms = close_under_composition(n, &[rotation, reflection]);
        Self::from_permutations(format!("dihedral:{n}"), perms)
    }

    /// The symmetric group on `n` points.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::InvalidOrder("symmetric group on 0 points".into()));
        }
        let order: usize = (1..=n).product();
        if order > MAX_PERMUTATION_ORDER {
            return Err(GroupError::InvalidOrder(format!("sym:{n} is too large")));
        }
        let mut generators = Vec::new();
        if n >= 2 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            generators.push(swap);
            generators.push((0..n).map(|i| (i + 1) % n).collect());
        }
        let perms = close_under_composition(n, &generators);
        Self::from_permutations(format!("sym:{n}"), perms)
    }

    /// Validate a square matrix of indices as a group table.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_table_named("table", rows)
    }

    pub fn from_table_named(name: &str, rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidOrder("empty table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        check_latin_square(n, &table)?;
        // A Latin square with an idempotent is not enough: we need a two-sided identity.
        if !(0..n).any(|e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x)) {
            return Err(GroupError::NoIdentity);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(Self::from_validated(name.to_string(), n, table))
    }

    fn from_permutations(name: String, perms: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let index: BTreeMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for p in &perms {
            for q in &perms {
                // (p·q)(i) = p(q(i))
                let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                table.push(index[pq.as_slice()]);
            }
        }
        let rows: Vec<Vec<usize>> = table.chunks(n).map(<[usize]>::to_vec).collect();
        Self::from_table_named(&name, &rows)
    }

    /// Build from a table that is already known to be a group table.
    fn from_validated(name: String, order: usize, table: Vec<usize>) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x))
            .expect("validated table has an identity");
        let inverses = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| table[x * order + y] == identity)
                    .expect("validated table has inverses")
            })
            .collect();
        FiniteGroup {
            name,
            order,
            table,
            identity,
            inverses,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `a⁻¹·b`
    #[inline]
    pub fn quotient(&self, a: usize, b: usize) -> usize {
        self.op(self.inverses[a], b)
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(a, b) == self.op(b, a)))
    }
}

fn check_latin_square(n: usize, table: &[usize]) -> Result<(), GroupError> {
    for i in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            let r = table[i * n + j];
            if r >= n || std::mem::replace(&mut seen_row[r], true) {
                return Err(GroupError::NotLatin { row: i, col: j });
            }
            let c = table[j * n + i];
            if c >= n || std::mem::replace(&mut seen_col[c], true) {
                return Err(GroupError::NotLatin { row: j, col: i });
            }
        }
    }
    Ok(())
}

/// All products of the generators, sorted lexicographically (identity first).
fn close_under_composition(points: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..points).collect();
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let gp: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(gp.clone()) {
                frontier.push(gp);
            }
        }
    }
    seen.into_iter().collect()
}
