use super::MagmoidTerm;
use crate::error::{Error, Result};

/// A permutation of wire positions: the wire entering at position `i` leaves
/// at position `self.image(i)` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &j in &images {
            if j >= n {
                return Err(Error::InvalidPermutation(format!("image {j} out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidPermutation(format!("image {j} repeated")));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{1..n}` from its 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero = images
            .iter()
            .map(|&j| {
                j.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("image 0 in a 1-based permutation".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(zero)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `next`: `i ↦ next(self(i))`.
    pub fn then(&self, next: &Permutation) -> Result<Permutation> {
        if self.len() != next.len() {
            return Err(Error::InvalidPermutation(format!(
                "cannot compose permutations of {} and {} elements",
                self.len(),
                next.len()
            )));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&j| next.images[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Reorders `items` so that `items[i]` ends up at position `image(i)`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        assert_eq!(items.len(), self.len(), "permutation length mismatch");
        let inv = self.inverse();
        inv.images.iter().map(|&i| items[i].clone()).collect()
    }

    /// Adjacent transpositions, as 0-based positions `q` swapping wires
    /// `q` and `q + 1`, which realize the permutation when applied in order.
    /// Produced by insertion sort on the target positions.
    pub fn adjacent_transpositions(&self) -> Vec<usize> {
        let mut arrangement: Vec<usize> = (0..self.len()).collect();
        let mut swaps = Vec::new();
        for j in 1..arrangement.len() {
            let mut k = j;
            while k > 0 && self.images[arrangement[k - 1]] > self.images[arrangement[k]] {
                arrangement.swap(k - 1, k);
                swaps.push(k - 1);
                k -= 1;
            }
        }
        swaps
    }
}

fn transposition_term(n: usize, q: usize) -> MagmoidTerm {
    let mut parts = Vec::with_capacity(3);
    if q > 0 {
        parts.push(MagmoidTerm::UnitE(q));
    }
    parts.push(MagmoidTerm::Pi);
    if n - q - 2 > 0 {
        parts.push(MagmoidTerm::UnitE(n - q - 2));
    }
    MagmoidTerm::sum_all(parts)
}

/// A term of rank (n,n) built from `Π` and units only whose graph is the
/// discrete permutation graph of `p`.
pub fn perm_term(p: &Permutation) -> MagmoidTerm {
    let n = p.len();
    MagmoidTerm::prod_all(
        p.adjacent_transpositions()
            .into_iter()
            .map(|q| transposition_term(n, q)),
    )
    .unwrap_or(MagmoidTerm::UnitE(n))
}

/// The rotation `s_{m,1}` of rank (m+1, m+1): the first wire moves past the
/// other `m`, sending `g₁g₂⋯g_{m+1}` to `g₂⋯g_{m+1}g₁`.
///
/// `s_{1,1} = Π` and `s_{m+1,1} = (s_{m,1} □ e) ∘ (e_m □ Π)`. For `m = 0` the
/// rotation of one wire is `e`.
pub fn s_m1_term(m: usize) -> MagmoidTerm {
    match m {
        0 => MagmoidTerm::UnitE(1),
        1 => MagmoidTerm::Pi,
        _ => MagmoidTerm::prod(
            MagmoidTerm::sum(s_m1_term(m - 1), MagmoidTerm::UnitE(1)),
            MagmoidTerm::sum(MagmoidTerm::UnitE(m - 1), MagmoidTerm::Pi),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Rank;

    #[test]
    fn validates_bijection() {
        assert!(Permutation::from_one_based(&[2, 1, 3]).is_ok());
        assert!(matches!(
            Permutation::from_one_based(&[1, 1]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::from_one_based(&[1, 3]).is_err());
    }

    #[test]
    fn swap_is_pi_and_identity_is_unit() {
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(perm_term(&swap), MagmoidTerm::Pi);
        assert_eq!(perm_term(&Permutation::identity(2)), MagmoidTerm::UnitE(2));
        assert_eq!(perm_term(&Permutation::identity(0)), MagmoidTerm::UnitE(0));
    }

    #[test]
    fn transpositions_reproduce_the_permutation() {
        let p = Permutation::from_one_based(&[1, 4, 7, 2, 5, 8, 3, 6, 9]).unwrap();
        let mut wires: Vec<usize> = (0..9).collect();
        for q in p.adjacent_transpositions() {
            wires.swap(q, q + 1);
        }
        assert_eq!(wires, p.apply(&(0..9).collect::<Vec<_>>()));
        assert_eq!(perm_term(&p).rank().unwrap(), Rank::new(9, 9));
    }

    #[test]
    fn apply_moves_items_to_their_images() {
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(p.apply(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
        let q = p.then(&p.inverse()).unwrap();
        assert!(q.is_identity());
    }

    #[test]
    fn rotation_terms() {
        assert_eq!(s_m1_term(1), MagmoidTerm::Pi);
        for m in 0..5 {
            assert_eq!(s_m1_term(m).rank().unwrap(), Rank::new(m + 1, m + 1));
        }
    }
}
