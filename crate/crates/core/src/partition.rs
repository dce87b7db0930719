//! Partitions of explicit length and the index-set constructors used by the
//! Horn inequalities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing integer sequence with an explicit length.
///
/// (2,1) of length 2 and (2,1,0) of length 3 are different values; use
/// [`Partition::pad`] and [`Partition::trimmed`] to move between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Partition(Vec<i64>);

impl TryFrom<Vec<i64>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<i64> {
    fn from(p: Partition) -> Vec<i64> {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<i64>) -> Result<Partition> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::pre("weakly_decreasing", format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn zero(n: usize) -> Partition {
        Partition(vec![0; n])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// |λ|.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// Extends with zeros to length `n`; errors if a nonzero part would be cut.
    pub fn pad(&self, n: usize) -> Result<Partition> {
        if self.0.len() > n && self.0[n..].iter().any(|&x| x != 0) {
            return Err(Error::pre("fits_length", format!("{:?} has more than {n} nonzero parts", self.0)));
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(Partition(v))
    }

    /// Drops trailing zeros.
    pub fn trimmed(&self) -> Partition {
        let mut v = self.0.clone();
        while v.last() == Some(&0) {
            v.pop();
        }
        Partition(v)
    }

    pub fn shift(&self, a: i64) -> Partition {
        Partition(self.0.iter().map(|x| x + a).collect())
    }

    pub fn scale(&self, k: i64) -> Partition {
        Partition(self.0.iter().map(|x| x * k).collect())
    }

    /// j(λ): the number of i in 1..n−1 with λ_i ≠ λ_{i+1}.
    pub fn jumps(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

/// λ(I) for I = {i_1 < … < i_r}: the k-th part is i_{r+1−k} − (r+1−k).
pub fn lambda_of_subset(set: &[usize], n: usize) -> Result<Partition> {
    check_subset(set, n)?;
    let r = set.len();
    Ok(Partition((0..r).map(|k| set[r - 1 - k] as i64 - (r - k) as i64).collect()))
}

pub(crate) fn check_subset(set: &[usize], n: usize) -> Result<()> {
    if set.is_empty() {
        return Err(Error::pre("nonempty_subset", "index set is empty"));
    }
    if set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::pre("increasing_subset", format!("{set:?} is not strictly increasing")));
    }
    if set[0] < 1 || *set.last().unwrap() > n {
        return Err(Error::pre("subset_in_range", format!("{set:?} is not inside 1..={n}")));
    }
    Ok(())
}

/// P(x,y) = (x_{n−1}^{y_n−y_{n−1}}, …, x_1^{y_2−y_1}, 0^{y_1}): the partition
/// filling the region above and left of the staircase through the points (x_i, y_i).
pub fn staircase_partition(x: &[i64], y: &[i64]) -> Result<Partition> {
    if x.len() != y.len() {
        return Err(Error::pre("equal_length", format!("{} vs {}", x.len(), y.len())));
    }
    for v in [x, y] {
        if v.windows(2).any(|w| w[0] > w[1]) || v.iter().any(|&t| t < 0) {
            return Err(Error::pre("nondecreasing_nonnegative", format!("{v:?}")));
        }
    }
    let n = x.len();
    let mut parts = Vec::new();
    for i in (1..n).rev() {
        for _ in 0..(y[i] - y[i - 1]) {
            parts.push(x[i - 1]);
        }
    }
    if n > 0 {
        parts.extend(std::iter::repeat(0).take(y[0] as usize));
    }
    Ok(Partition(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_of_subset(&[1, 2, 3], 5).unwrap().parts(), &[0, 0, 0]);
        assert_eq!(lambda_of_subset(&[5], 5).unwrap().parts(), &[4]);
        assert_eq!(lambda_of_subset(&[2, 4, 6], 6).unwrap().parts(), &[3, 2, 1]);
        assert!(lambda_of_subset(&[0], 3).is_err());
        assert!(lambda_of_subset(&[2, 2], 3).is_err());
    }

    #[test]
    fn staircase_examples() {
        let p = staircase_partition(&[2, 4, 5, 6], &[1, 3, 3, 4]).unwrap();
        assert_eq!(p.parts(), &[5, 2, 2, 0]);
        let p = staircase_partition(&[1, 2, 3, 4], &[1, 2, 3, 4]).unwrap();
        assert_eq!(p.parts(), &[3, 2, 1, 0]);
        let p = staircase_partition(&[0, 0, 0], &[0, 2, 5]).unwrap();
        assert_eq!(p.size(), 0);
        assert!(staircase_partition(&[1, 2], &[1]).is_err());
        assert!(staircase_partition(&[2, 1], &[1, 2]).is_err());
    }

    #[test]
    fn jumps_and_shape() {
        let p = Partition::new(vec![3, 3, 1, 0]).unwrap();
        assert_eq!(p.jumps(), 2);
        assert_eq!(p.trimmed().len(), 3);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(p.pad(2).is_err());
        assert_eq!(p.pad(6).unwrap().len(), 6);
    }
}
