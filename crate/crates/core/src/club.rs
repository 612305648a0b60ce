//! Club codes derived from ordinal-domain collapse conditions, and the
//! mixed-radix block codec enumerating all functions on a block.

use std::ops::Range;

use crate::collapse::OrdinalColCondition;
use crate::error::{Error, Result};

/// A strictly increasing sequence starting at 0. Its length is one more than
/// the domain length of the condition it was derived from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClubCode(Vec<usize>);

impl ClubCode {
    pub fn new(points: Vec<usize>) -> Result<Self> {
        let valid = points.first() == Some(&0) && points.windows(2).all(|w| w[0] < w[1]);
        if !valid {
            return Err(Error::NotAClubCode(points));
        }
        Ok(ClubCode(points))
    }

    pub fn points(&self) -> &[usize] {
        &self.0
    }

    /// The last point, i.e. the supremum of the code.
    pub fn sup(&self) -> usize {
        *self.0.last().expect("club codes are nonempty")
    }

    /// `[C(i), C(i+1))` for every `i`.
    pub fn blocks(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.0.windows(2).map(|w| w[0]..w[1])
    }

    pub fn block(&self, i: usize) -> Range<usize> {
        self.0[i]..self.0[i + 1]
    }

    pub fn block_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_initial_segment_of(&self, other: &ClubCode) -> bool {
        other.0.starts_with(&self.0)
    }
}

/// `C(0) = 0`, `C(i+1) = C(i) + 1 + p(i)`.
pub fn derive_club(p: &OrdinalColCondition) -> ClubCode {
    let mut points = Vec::with_capacity(p.len() + 1);
    let mut c = 0;
    points.push(c);
    for &v in p.values() {
        c += 1 + v;
        points.push(c);
    }
    ClubCode(points)
}

/// Inverse of [`derive_club`]: `p(i) = C(i+1) - C(i) - 1`.
pub fn recover_from_club(points: &[usize]) -> Result<OrdinalColCondition> {
    let code = ClubCode::new(points.to_vec())?;
    Ok(OrdinalColCondition::new(
        code.0.windows(2).map(|w| w[1] - w[0] - 1).collect(),
    ))
}

/// Number of functions from a block of length `len` into `alphabet` values.
pub fn block_space(len: usize, alphabet: usize) -> Result<usize> {
    u32::try_from(len)
        .ok()
        .and_then(|l| alphabet.checked_pow(l))
        .ok_or(Error::IndexOverflow { alphabet, len })
}

/// Index of `f : [α, β) → alphabet` in the lexicographic enumeration, most
/// significant digit at `α`.
pub fn block_encode(f: &[usize], block: Range<usize>, alphabet: usize) -> Result<usize> {
    if f.len() != block.len() {
        return Err(Error::BlockLength {
            expected: block.len(),
            got: f.len(),
        });
    }
    block_space(block.len(), alphabet)?;
    f.iter().try_fold(0usize, |acc, &v| {
        if v >= alphabet {
            return Err(Error::ValueOutOfAlphabet { value: v, alphabet });
        }
        Ok(acc * alphabet + v)
    })
}

/// The function on `block` with the given enumeration index.
pub fn block_decode(index: usize, block: Range<usize>, alphabet: usize) -> Result<Vec<usize>> {
    let count = block_space(block.len(), alphabet)?;
    if index >= count {
        return Err(Error::IndexOutOfRange { index, count });
    }
    let mut f = vec![0; block.len()];
    let mut rest = index;
    for slot in f.iter_mut().rev() {
        *slot = rest % alphabet;
        rest /= alphabet;
    }
    Ok(f)
}
