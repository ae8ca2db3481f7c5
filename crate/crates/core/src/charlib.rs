//! Irreducible characters of the symmetric group by the Murnaghan–Nakayama
//! rule, dimensions by the hook-length formula, and normalized characters.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::perm::Partition;

/// `(n)_k · χ_ω(μ 1^{n-k}) / χ_ω(1^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedValue {
    pub value: BigRational,
    pub n: usize,
    pub k: usize,
}

/// Memoizing evaluator for characters `χ_ω(λ)`.
///
/// Class parts are stripped largest first. Once only parts equal to one
/// remain the value is the dimension of what is left of the shape, which is
/// read off the hook lengths unless the evaluator was built with
/// [`CharacterCache::pure`].
#[derive(Default)]
pub struct CharacterCache {
    memo: FxHashMap<(Vec<usize>, Vec<usize>), BigInt>,
    dims: FxHashMap<Vec<usize>, BigInt>,
    pure: bool,
}

impl CharacterCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Plain border-strip recursion all the way down, with no hook-length
    /// shortcut. Used to cross-check the default evaluator.
    pub fn pure() -> Self {
        Self {
            pure: true,
            ..Self::default()
        }
    }

    pub fn character(&mut self, omega: &Partition, lam: &Partition) -> Result<BigInt> {
        if omega.size() != lam.size() {
            return Err(Error::SizeMismatch {
                left: omega.size(),
                right: lam.size(),
            });
        }
        let mut parts = lam.parts().to_vec();
        if !self.pure {
            while parts.last() == Some(&1) {
                parts.pop();
            }
        }
        Ok(self.strip(omega.parts(), &parts))
    }

    pub fn dimension(&mut self, omega: &Partition) -> BigInt {
        self.dim(omega.parts())
    }

    fn dim(&mut self, shape: &[usize]) -> BigInt {
        if let Some(d) = self.dims.get(shape) {
            return d.clone();
        }
        let d = hook_dimension(shape);
        self.dims.insert(shape.to_vec(), d.clone());
        d
    }

    fn strip(&mut self, shape: &[usize], parts: &[usize]) -> BigInt {
        let Some((&r, rest)) = parts.split_first() else {
            return if self.pure {
                BigInt::from(shape.is_empty() as i32)
            } else {
                self.dim(shape)
            };
        };
        let key = (shape.to_vec(), parts.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for (smaller, sign) in rim_hook_removals(shape, r) {
            let v = self.strip(&smaller, rest);
            if sign > 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }

    /// `(n)_k χ_ω(μ 1^{n-k}) / χ_ω(1^n)` for `ω ⊢ n`, `μ ⊢ k`.
    pub fn normalized_character(
        &mut self,
        omega: &Partition,
        mu: &Partition,
    ) -> Result<NormalizedValue> {
        let (n, k) = (omega.size(), mu.size());
        if k > n {
            return Err(Error::InvalidArgument(format!(
                "class {mu} of size {k} exceeds shape {omega} of size {n}"
            )));
        }
        let chi = self.character(omega, &mu.pad_ones(n - k))?;
        let dim = self.dimension(omega);
        let value = BigRational::new(falling_factorial(n, k) * chi, dim);
        Ok(NormalizedValue { value, n, k })
    }
}

/// Shapes obtained by removing a border strip of size `r`, with the sign
/// `(-1)^{height}`. Works on beta-sets: a strip removal moves one bead down
/// by `r` into a gap, and the height is the number of beads jumped over.
fn rim_hook_removals(shape: &[usize], r: usize) -> Vec<(Vec<usize>, i32)> {
    let len = shape.len();
    let beta: Vec<usize> = shape
        .iter()
        .enumerate()
        .map(|(i, &l)| l + len - 1 - i)
        .collect();
    let mut out = Vec::new();
    for i in 0..len {
        let b = beta[i];
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beta.clone();
        moved[i] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let new_shape: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j))
            .filter(|&l| l > 0)
            .collect();
        out.push((new_shape, if jumped % 2 == 0 { 1 } else { -1 }));
    }
    out
}

fn hook_dimension(shape: &[usize]) -> BigInt {
    let n: usize = shape.iter().sum();
    let conj = Partition::from_unsorted(shape.to_vec()).conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    falling_factorial(n, n) / hooks
}

/// `n (n-1) .. (n-k+1)`.
pub fn falling_factorial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i))
}

/// `χ_ω(λ)` with a fresh cache.
pub fn character(omega: &Partition, lam: &Partition) -> Result<BigInt> {
    CharacterCache::new().character(omega, lam)
}

/// `χ_ω(1^n)` by the hook-length formula.
pub fn dimension(omega: &Partition) -> BigInt {
    hook_dimension(omega.parts())
}

pub fn normalized_character(omega: &Partition, mu: &Partition) -> Result<NormalizedValue> {
    CharacterCache::new().normalized_character(omega, mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::partitions_of;

    fn part(p: &[usize]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn small_values() {
        for n in 1..=6 {
            for lam in partitions_of(n) {
                assert_eq!(character(&part(&[n]), &lam).unwrap(), int(1));
            }
        }
        assert_eq!(character(&part(&[1, 1, 1]), &part(&[3])).unwrap(), int(1));
        assert_eq!(
            character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(),
            int(2)
        );
        assert_eq!(
            character(&part(&[2, 2]), &part(&[2, 1, 1])).unwrap(),
            int(0)
        );
        assert!(matches!(
            character(&part(&[2, 1]), &part(&[2])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn dimensions() {
        assert_eq!(dimension(&part(&[4])), int(1));
        assert_eq!(dimension(&part(&[2, 2])), int(2));
        assert_eq!(dimension(&part(&[2, 1])), int(2));
        assert_eq!(dimension(&part(&[3, 2, 1])), int(16));
        let mut pure = CharacterCache::pure();
        for n in 1..=8 {
            let mut total = BigInt::zero();
            for omega in partitions_of(n) {
                let d = dimension(&omega);
                assert_eq!(pure.character(&omega, &Partition::ones(n)).unwrap(), d);
                total += &d * &d;
            }
            assert_eq!(total, falling_factorial(n, n));
        }
    }

    #[test]
    fn shortcut_agrees_with_pure_recursion() {
        let mut fast = CharacterCache::new();
        let mut pure = CharacterCache::pure();
        for n in 1..=8 {
            for omega in partitions_of(n) {
                for lam in partitions_of(n) {
                    assert_eq!(
                        fast.character(&omega, &lam).unwrap(),
                        pure.character(&omega, &lam).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn transpose_identity() {
        let mut cache = CharacterCache::new();
        for n in 1..=7 {
            for omega in partitions_of(n) {
                for lam in partitions_of(n) {
                    let a = cache.character(&omega.conjugate(), &lam).unwrap();
                    let b = cache.character(&omega, &lam).unwrap();
                    assert_eq!(a, b * lam.sign());
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        let mut cache = CharacterCache::pure();
        for n in 1..=6 {
            let shapes: Vec<_> = partitions_of(n).collect();
            let classes: Vec<_> = partitions_of(n).collect();
            for a in &classes {
                for b in &classes {
                    let mut sum = BigInt::zero();
                    for w in &shapes {
                        sum += cache.character(w, a).unwrap() * cache.character(w, b).unwrap();
                    }
                    let expected = if a == b {
                        centralizer_order(a)
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(sum, expected, "classes {a} {b}");
                }
            }
        }
    }

    fn centralizer_order(lam: &Partition) -> BigInt {
        let mut z = BigInt::one();
        for (size, &m) in lam.multiplicities().iter().enumerate().skip(1) {
            z *= BigInt::from(size).pow(m as u32) * falling_factorial(m, m);
        }
        z
    }

    #[test]
    fn normalized_values() {
        for n in 2..=7 {
            for mu in partitions_of(2)
                .chain(partitions_of(3))
                .filter(|mu| mu.size() <= n)
            {
                let v = normalized_character(&part(&[n]), &mu).unwrap();
                assert_eq!(v.value, BigRational::from(falling_factorial(n, mu.size())));
            }
            let sign = normalized_character(&Partition::ones(n), &part(&[2])).unwrap();
            assert_eq!(sign.value, -BigRational::from(falling_factorial(n, 2)));
        }
        let v = normalized_character(&part(&[2, 2]), &part(&[2])).unwrap();
        assert_eq!((v.value, v.n, v.k), (BigRational::zero(), 4, 2));
        assert!(matches!(
            normalized_character(&part(&[2]), &part(&[3])),
            Err(Error::InvalidArgument(_))
        ));
    }
}
