//! Dense bitmaps over the points of GF(2)^d, indexed by the integer whose
//! bit `j` is coordinate `j`.

/// `MASKS[b]` selects the bit positions whose index has bit `b` clear.
const MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct Bitmap {
    dim: usize,
    words: Vec<u64>,
}

impl Bitmap {
    pub(crate) fn empty(dim: usize) -> Self {
        let words = if dim >= 6 { 1 << (dim - 6) } else { 1 };
        Self {
            dim,
            words: vec![0; words],
        }
    }

    pub(crate) fn full(dim: usize) -> Self {
        let mut b = Self::empty(dim);
        if dim >= 6 {
            b.words.iter_mut().for_each(|w| *w = u64::MAX);
        } else {
            b.words[0] = (1u64 << (1 << dim)) - 1;
        }
        b
    }

    pub(crate) fn from_indices(dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Self::empty(dim);
        for i in indices {
            b.set(i);
        }
        b
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub(crate) fn get(&self, i: usize) -> bool {
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub(crate) fn clear(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    pub(crate) fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub(crate) fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| (k << 6) | w.trailing_zeros() as usize)
    }

    pub(crate) fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let t = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some((k << 6) | t)
            })
        })
    }

    pub(crate) fn and_assign(&mut self, other: &Bitmap) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub(crate) fn or_assign(&mut self, other: &Bitmap) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// First point of `self` outside `other`.
    pub(crate) fn first_outside(&self, other: &Bitmap) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find(|(_, (&a, &b))| a & !b != 0)
            .map(|(k, (a, b))| (k << 6) | (a & !b).trailing_zeros() as usize)
    }

    pub(crate) fn and_not_assign(&mut self, other: &Bitmap) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Complement within the `2^dim` points.
    pub(crate) fn complement(&self) -> Bitmap {
        let mut out = Bitmap::full(self.dim);
        out.and_not_assign(self);
        out
    }

    /// `{x ^ v : x in self}`.
    pub(crate) fn translate(&self, v: usize) -> Bitmap {
        debug_assert!(v < 1 << self.dim);
        let low = v & 63;
        let high = v >> 6;
        let mut out = vec![0u64; self.words.len()];
        for (k, &w) in self.words.iter().enumerate() {
            let mut w = w;
            for (b, &mask) in MASKS.iter().enumerate() {
                if (low >> b) & 1 == 1 {
                    let s = 1 << b;
                    w = ((w & mask) << s) | ((w >> s) & mask);
                }
            }
            out[k ^ high] = w;
        }
        Bitmap {
            dim: self.dim,
            words: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translate_matches_pointwise_xor() {
        for dim in [0, 1, 3, 6, 8] {
            let points: Vec<usize> = (0..1usize << dim).filter(|x| (x * 7 + 3) % 5 < 2).collect();
            let b = Bitmap::from_indices(dim, points.iter().copied());
            for v in 0..1usize << dim {
                let expect = Bitmap::from_indices(dim, points.iter().map(|x| x ^ v));
                assert_eq!(b.translate(v), expect, "dim {dim}, v {v}");
            }
        }
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(Bitmap::full(2).count(), 4);
        assert_eq!(Bitmap::full(7).count(), 128);
        let b = Bitmap::from_indices(3, [1, 5]);
        assert_eq!(
            b.complement().iter_ones().collect::<Vec<_>>(),
            vec![0, 2, 3, 4, 6, 7]
        );
        assert_eq!(b.first(), Some(1));
        assert_eq!(Bitmap::empty(4).first(), None);
    }
}
