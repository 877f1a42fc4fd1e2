use crate::error::{Error, Result};

/// Dimensions of a `pr × pc × pl` process grid. Process P(i, j, k) has rank
/// `k·pr·pc + i·pc + j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GridShape {
    pub pr: usize,
    pub pc: usize,
    pub pl: usize,
}

impl GridShape {
    pub fn new(pr: usize, pc: usize, pl: usize) -> Result<Self> {
        if pr == 0 || pc == 0 || pl == 0 {
            return Err(Error::config(format!("grid {pr}x{pc}x{pl} has an empty dimension")));
        }
        Ok(GridShape { pr, pc, pl })
    }

    /// The `√(p/c) × √(p/c) × c` grid; `p/c` must be a perfect square.
    pub fn square(p: usize, c: usize) -> Result<Self> {
        if c == 0 || !p.is_multiple_of(c) {
            return Err(Error::config(format!("c = {c} does not divide p = {p}")));
        }
        let side = (p / c).isqrt();
        if side * side != p / c {
            return Err(Error::config(format!("p/c = {} is not a perfect square", p / c)));
        }
        GridShape::new(side, side, c)
    }

    /// Parses `PRxPCxC`.
    pub fn parse(s: &str) -> Result<Self> {
        let dims: Vec<usize> = s
            .split(['x', 'X'])
            .map(|d| d.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::config(format!("grid '{s}' is not of the form PRxPCxC")))?;
        match dims[..] {
            [pr, pc, pl] => GridShape::new(pr, pc, pl),
            _ => Err(Error::config(format!("grid '{s}' is not of the form PRxPCxC"))),
        }
    }

    pub fn size(&self) -> usize {
        self.pr * self.pc * self.pl
    }

    pub fn is_square_layer(&self) -> bool {
        self.pr == self.pc
    }

    pub fn rank(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.pr && j < self.pc && k < self.pl);
        k * self.pr * self.pc + i * self.pc + j
    }

    pub fn coords(&self, rank: usize) -> (usize, usize, usize) {
        let layer = self.pr * self.pc;
        (rank % layer / self.pc, rank % self.pc, rank / layer)
    }
}

impl std::fmt::Display for GridShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}x{}", self.pr, self.pc, self.pl)
    }
}
