/// Fixed-width bit row backed by `u64` words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

const WORD: usize = 64;

impl BitRow {
    pub fn new(len: usize) -> Self {
        BitRow { words: vec![0; len.div_ceil(WORD)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn fill(&mut self) {
        for w in &mut self.words {
            *w = !0;
        }
        let tail = self.len % WORD;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last = (1u64 << tail) - 1;
            }
        }
    }

    pub fn union_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &BitRow) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `self ∩ mask ⊆ other`.
    pub fn is_subset_within(&self, mask: &BitRow, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&mask.words)
            .zip(&other.words)
            .all(|((a, m), b)| a & m & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + bit)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_and_fill() {
        let mut r = BitRow::new(130);
        r.insert(0);
        r.insert(64);
        r.insert(129);
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(r.count(), 3);
        r.remove(64);
        assert!(!r.contains(64));
        let mut full = BitRow::new(130);
        full.fill();
        assert_eq!(full.count(), 130);
        assert!(r.is_subset(&full));
        assert!(!full.is_subset(&r));
    }
}
