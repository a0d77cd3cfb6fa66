/// Binary indexed tree over positions `1..=len` holding counts.
#[derive(Debug, Clone)]
pub(crate) struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    pub fn new(len: usize) -> Self {
        Self { tree: vec![0; len + 1] }
    }

    pub fn add(&mut self, pos: usize, delta: u64) {
        let mut i = pos;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over positions `1..=pos`.
    pub fn prefix(&self, pos: usize) -> u64 {
        let mut i = pos.min(self.tree.len() - 1);
        let mut acc = 0;
        while i > 0 {
            acc += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        acc
    }
}
