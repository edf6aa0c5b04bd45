use crate::Vertex;

/// `count` consecutive slides along the edge `from → to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
    pub count: u64,
}

impl Move {
    pub fn new(from: Vertex, to: Vertex, count: u64) -> Self {
        Move { from, to, count }
    }
}

/// An ordered list of compressed moves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MoveSequence {
    moves: Vec<Move>,
    total_length: u64,
}

impl MoveSequence {
    pub fn new() -> Self {
        MoveSequence::default()
    }

    /// Appends a move, merging it into the last one when it repeats the
    /// same edge in the same direction. Zero-count moves are dropped.
    pub fn push(&mut self, mv: Move) {
        if mv.count == 0 {
            return;
        }
        self.total_length += mv.count;
        match self.moves.last_mut() {
            Some(last) if last.from == mv.from && last.to == mv.to => last.count += mv.count,
            _ => self.moves.push(mv),
        }
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    /// Number of unit slides.
    pub fn total_length(&self) -> u64 {
        self.total_length
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl FromIterator<Move> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        let mut seq = MoveSequence::new();
        for mv in iter {
            seq.push(mv);
        }
        seq
    }
}

/// Unit `(from, to)` slides in order.
pub fn expand_moves(seq: &MoveSequence) -> Vec<(Vertex, Vertex)> {
    seq.moves()
        .iter()
        .flat_map(|m| std::iter::repeat_n((m.from, m.to), m.count as usize))
        .collect()
}
