/// Disjoint-set forest with union by size and path compression. Tracks the
/// size of the largest set so that incremental percolation runs can read it
/// after every merge.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parents: Vec<usize>,
    sizes: Vec<usize>,
    largest: usize,
}

impl UnionFind {
    pub fn new(size: usize) -> Self {
        Self {
            parents: (0..size).collect(),
            sizes: vec![1; size],
            largest: usize::from(size > 0),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.parents.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parents[root] != root {
            root = self.parents[root];
        }
        while i != root {
            let parent = self.parents[i];
            self.parents[i] = root;
            i = parent;
        }
        root
    }

    /// Merges the sets holding `i` and `j`. Returns false if they were
    /// already joined.
    pub fn union(&mut self, i: usize, j: usize) -> bool {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a == b {
            return false;
        }
        if self.sizes[a] < self.sizes[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parents[b] = a;
        self.sizes[a] += self.sizes[b];
        self.largest = self.largest.max(self.sizes[a]);
        true
    }

    pub fn set_size(&mut self, i: usize) -> usize {
        let root = self.find(i);
        self.sizes[root]
    }

    /// Size of the largest set; 0 only for an empty forest.
    #[inline]
    pub fn largest(&self) -> usize {
        self.largest
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_tracks_largest() {
        let mut uf = UnionFind::new(6);
        assert_eq!(uf.largest(), 1);
        assert!(uf.union(0, 1));
        assert!(uf.union(1, 2));
        assert!(!uf.union(0, 2));
        assert!(uf.union(3, 4));
        assert_eq!(uf.largest(), 3);
        assert_eq!(uf.set_size(4), 2);
        assert_eq!(uf.set_size(5), 1);
        assert_eq!(uf.find(2), uf.find(0));
        assert_ne!(uf.find(3), uf.find(0));
        assert!(uf.union(4, 2));
        assert_eq!(uf.largest(), 5);
    }

    #[test]
    fn empty_forest() {
        let uf = UnionFind::new(0);
        assert!(uf.is_empty());
        assert_eq!(uf.largest(), 0);
    }
}
