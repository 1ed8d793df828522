//! Finitely generated abelian groups `ℤ^r ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` in standard
//! form, written additively.
//!
//! Every subgroup question is turned into integer lattice algebra: a set of
//! elements is replaced by its coordinate preimage in `ℤ^(r+k)`, i.e. the
//! lattice spanned by the element vectors together with the torsion rows
//! `d_j · e_(r+j)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{left_kernel, Lattice};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec<T> {
    rank: usize,
    moduli: Vec<T>,
}

/// Coordinate vector of a group element. Torsion coordinates are kept in
/// `[0, d_j)` by every constructor in [`GroupSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement<T>(Vec<T>);

impl<T> GroupElement<T> {
    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }
}

impl<T: fmt::Display> fmt::Display for GroupElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Index of a subgroup in its ambient group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Index<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> GroupSpec<T> {
    pub fn new(rank: usize, moduli: Vec<T>) -> Result<Self> {
        let two = T::one() + T::one();
        if let Some(d) = moduli.iter().find(|d| **d < two) {
            return Err(Error::InvalidSpec(format!("modulus {d} is smaller than 2")));
        }
        Ok(GroupSpec { rank, moduli })
    }

    /// `ℤ^rank`.
    pub fn free(rank: usize) -> Self {
        GroupSpec { rank, moduli: Vec::new() }
    }

    /// `ℤ/d_1 ⊕ … ⊕ ℤ/d_k`.
    pub fn finite(moduli: Vec<T>) -> Result<Self> {
        Self::new(0, moduli)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn moduli(&self) -> &[T] {
        &self.moduli
    }

    /// Length of element vectors.
    pub fn dim(&self) -> usize {
        self.rank + self.moduli.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<T> {
        self.is_finite().then(|| self.moduli.iter().fold(T::one(), |a, d| a * d.clone()))
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn element(&self, coords: Vec<T>) -> Result<GroupElement<T>> {
        self.check_len(coords.len())?;
        Ok(self.reduce(coords))
    }

    pub fn element_from_i64(&self, coords: &[i64]) -> Result<GroupElement<T>> {
        self.element(coords.iter().map(|&x| T::from_i64_exact(x)).collect())
    }

    fn reduce(&self, mut coords: Vec<T>) -> GroupElement<T> {
        for (x, d) in coords[self.rank..].iter_mut().zip(&self.moduli) {
            *x = x.mod_floor(d);
        }
        GroupElement(coords)
    }

    fn check_len(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::SpecMismatch { expected: self.dim(), found });
        }
        Ok(())
    }

    /// Fails with `SpecMismatch` unless `a` has this spec's length.
    pub fn check(&self, a: &GroupElement<T>) -> Result<()> {
        self.check_len(a.0.len())
    }

    pub fn zero(&self) -> GroupElement<T> {
        GroupElement(vec![T::zero(); self.dim()])
    }

    pub fn add(&self, a: &GroupElement<T>, b: &GroupElement<T>) -> Result<GroupElement<T>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x.clone() + y.clone()).collect()))
    }

    pub fn neg(&self, a: &GroupElement<T>) -> Result<GroupElement<T>> {
        self.check(a)?;
        Ok(self.reduce(a.0.iter().map(|x| -x.clone()).collect()))
    }

    pub fn sub(&self, a: &GroupElement<T>, b: &GroupElement<T>) -> Result<GroupElement<T>> {
        self.add(a, &self.neg(b)?)
    }

    /// `k · a`.
    pub fn scale(&self, a: &GroupElement<T>, k: &T) -> Result<GroupElement<T>> {
        self.check(a)?;
        Ok(self.reduce(a.0.iter().map(|x| x.clone() * k.clone()).collect()))
    }

    /// `Σ coeffs[i] · elems[i]`.
    pub fn combination(&self, coeffs: &[T], elems: &[GroupElement<T>]) -> Result<GroupElement<T>> {
        if coeffs.len() != elems.len() {
            return Err(Error::LengthMismatch { left: coeffs.len(), right: elems.len() });
        }
        let mut acc = self.zero();
        for (c, e) in coeffs.iter().zip(elems) {
            acc = self.add(&acc, &self.scale(e, c)?)?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self, a: &GroupElement<T>) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    /// Order of `a`; `None` when infinite.
    pub fn element_order(&self, a: &GroupElement<T>) -> Result<Option<T>> {
        self.check(a)?;
        if a.0[..self.rank].iter().any(|x| !x.is_zero()) {
            return Ok(None);
        }
        Ok(Some(a.0[self.rank..].iter().zip(&self.moduli).fold(T::one(), |acc, (x, d)| {
            acc.lcm(&(d.clone() / x.gcd(d)))
        })))
    }

    /// All elements of a finite group, sorted lexicographically.
    pub fn elements(&self) -> Result<Vec<GroupElement<T>>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut out = vec![self.zero()];
        for (j, d) in self.moduli.iter().enumerate() {
            let mut next = Vec::new();
            for e in &out {
                let mut x = T::zero();
                while x < *d {
                    let mut c = e.0.clone();
                    c[j] = x.clone();
                    next.push(GroupElement(c));
                    x = x + T::one();
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    /// Elements of `⟨gens⟩`, sorted; `InfiniteGroup` if it is infinite.
    pub fn generated_elements(&self, gens: &[GroupElement<T>]) -> Result<Vec<GroupElement<T>>> {
        for g in gens {
            if self.element_order(g)?.is_none() {
                return Err(Error::InfiniteGroup);
            }
        }
        let mut seen: BTreeSet<GroupElement<T>> = BTreeSet::from([self.zero()]);
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g)?;
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    fn torsion_rows(&self) -> Vec<Vec<T>> {
        self.moduli
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let mut row = vec![T::zero(); self.dim()];
                row[self.rank + j] = d.clone();
                row
            })
            .collect()
    }

    /// Coordinate preimage of `⟨gens⟩` in `ℤ^dim`.
    pub fn subgroup_lattice(&self, gens: &[GroupElement<T>]) -> Result<Lattice<T>> {
        let mut rows = Vec::with_capacity(gens.len() + self.moduli.len());
        for g in gens {
            self.check(g)?;
            rows.push(g.0.clone());
        }
        rows.extend(self.torsion_rows());
        Ok(Lattice::from_rows(self.dim(), &rows))
    }

    /// HNF basis of `{ x ∈ ℤ^m : Σ x_i gens_i = 0 }`.
    pub fn relation_lattice(&self, gens: &[GroupElement<T>]) -> Result<Lattice<T>> {
        let m = gens.len();
        let mut rows = Vec::with_capacity(m + self.moduli.len());
        for g in gens {
            self.check(g)?;
            rows.push(g.0.clone());
        }
        rows.extend(self.torsion_rows());
        let kernel = left_kernel(&rows, self.dim());
        let projected: Vec<Vec<T>> = kernel.into_iter().map(|row| row[..m].to_vec()).collect();
        Ok(Lattice::from_rows(m, &projected))
    }

    pub fn is_member(&self, x: &GroupElement<T>, gens: &[GroupElement<T>]) -> Result<bool> {
        self.check(x)?;
        Ok(self.subgroup_lattice(gens)?.contains(&x.0))
    }

    /// Generators of `⟨a⟩ ∩ ⟨b⟩`; zero generators are dropped.
    pub fn subgroup_intersection(
        &self,
        a: &[GroupElement<T>],
        b: &[GroupElement<T>],
    ) -> Result<Vec<GroupElement<T>>> {
        let both = self.subgroup_lattice(a)?.intersect(&self.subgroup_lattice(b)?);
        Ok(self.lattice_generators(&both))
    }

    /// Nonzero group elements represented by the rows of a preimage lattice.
    pub fn lattice_generators(&self, lattice: &Lattice<T>) -> Vec<GroupElement<T>> {
        lattice
            .basis()
            .iter()
            .map(|row| self.reduce(row.clone()))
            .filter(|g| !self.is_zero(g))
            .collect()
    }

    /// True iff `⟨a⟩ = ⟨b⟩`.
    pub fn same_subgroup(&self, a: &[GroupElement<T>], b: &[GroupElement<T>]) -> Result<bool> {
        Ok(self.subgroup_lattice(a)? == self.subgroup_lattice(b)?)
    }

    /// `[G : ⟨gens⟩]`.
    pub fn subgroup_index(&self, gens: &[GroupElement<T>]) -> Result<Index<T>> {
        Ok(match self.subgroup_lattice(gens)?.index() {
            Some(n) => Index::Finite(n),
            None => Index::Infinite,
        })
    }
}

/// True iff `gs[i] ↦ hs[i]` extends to an isomorphism `⟨gs⟩ → ⟨hs⟩`, i.e. both
/// generator families satisfy exactly the same integer relations.
pub fn generator_map_extends_to_iso<T: Scalar>(
    spec1: &GroupSpec<T>,
    gs: &[GroupElement<T>],
    spec2: &GroupSpec<T>,
    hs: &[GroupElement<T>],
) -> Result<bool> {
    if gs.len() != hs.len() {
        return Err(Error::LengthMismatch { left: gs.len(), right: hs.len() });
    }
    Ok(spec1.relation_lattice(gs)? == spec2.relation_lattice(hs)?)
}
