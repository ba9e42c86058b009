//! Variable identifiers and their fixed global order.
//!
//! With ambient dimension `n`, a polynomial lives in `3n + 1` variables laid
//! out as `x_1 < ... < x_n < y < a_1 < ... < a_n < b_1 < ... < b_n`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    X,
    Y,
    A,
    B,
}

/// A coordinate (`x_i`, `y`) or a line parameter (`a_i`, `b_i`).
///
/// Indices are 1-based; `y` carries index 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub kind: VarKind,
    pub index: usize,
}

impl VarId {
    pub fn x(i: usize) -> Self {
        VarId {
            kind: VarKind::X,
            index: i,
        }
    }

    pub fn y() -> Self {
        VarId {
            kind: VarKind::Y,
            index: 0,
        }
    }

    pub fn a(i: usize) -> Self {
        VarId {
            kind: VarKind::A,
            index: i,
        }
    }

    pub fn b(i: usize) -> Self {
        VarId {
            kind: VarKind::B,
            index: i,
        }
    }

    /// Total number of variables for ambient dimension `n`.
    pub fn count(n: usize) -> usize {
        3 * n + 1
    }

    /// Position of this variable in an exponent vector.
    pub fn slot(self, n: usize) -> usize {
        match self.kind {
            VarKind::X => self.index - 1,
            VarKind::Y => n,
            VarKind::A => n + self.index,
            VarKind::B => 2 * n + self.index,
        }
    }

    /// Inverse of [`VarId::slot`].
    pub fn from_slot(slot: usize, n: usize) -> Self {
        if slot < n {
            VarId::x(slot + 1)
        } else if slot == n {
            VarId::y()
        } else if slot <= 2 * n {
            VarId::a(slot - n)
        } else {
            VarId::b(slot - 2 * n)
        }
    }

    pub fn check(self, n: usize) -> Result<Self> {
        let ok = match self.kind {
            VarKind::Y => self.index == 0,
            _ => self.index >= 1 && self.index <= n,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::UnknownVariable {
                name: self.to_string(),
                position: 0,
                n,
            })
        }
    }

    /// Parses a bare identifier such as `x2`, `y`, `a1`.
    pub fn parse(name: &str, n: usize) -> Option<Self> {
        if name == "y" {
            return Some(VarId::y());
        }
        let (head, digits) = name.split_at(1);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let index: usize = digits.parse().ok()?;
        let v = match head {
            "x" => VarId::x(index),
            "a" => VarId::a(index),
            "b" => VarId::b(index),
            _ => return None,
        };
        v.check(n).ok()
    }

    pub fn is_param(self) -> bool {
        matches!(self.kind, VarKind::A | VarKind::B)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::X => write!(f, "x{}", self.index),
            VarKind::Y => write!(f, "y"),
            VarKind::A => write!(f, "a{}", self.index),
            VarKind::B => write!(f, "b{}", self.index),
        }
    }
}
