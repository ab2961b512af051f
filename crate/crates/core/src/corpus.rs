//! A fixed set of small monomial algebras used for regression and verification.

use crate::algebra::MonomialAlgebra;
use crate::error::Result;

#[derive(Clone, Copy, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn algebra(&self) -> Result<MonomialAlgebra> {
        crate::algebra_from_text(self.text)
    }
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "linear_a4",
        text: include_str!("../corpus/linear_a4.quiver"),
    },
    CorpusEntry {
        name: "linear_overlap",
        text: include_str!("../corpus/linear_overlap.quiver"),
    },
    CorpusEntry {
        name: "linear_chain",
        text: include_str!("../corpus/linear_chain.quiver"),
    },
    CorpusEntry {
        name: "cyclic2",
        text: include_str!("../corpus/cyclic2.quiver"),
    },
    CorpusEntry {
        name: "cyclic3",
        text: include_str!("../corpus/cyclic3.quiver"),
    },
    CorpusEntry {
        name: "cyclic4",
        text: include_str!("../corpus/cyclic4.quiver"),
    },
    CorpusEntry {
        name: "truncated_cycle3_sq",
        text: include_str!("../corpus/truncated_cycle3_sq.quiver"),
    },
    CorpusEntry {
        name: "two_cycle_cube",
        text: include_str!("../corpus/two_cycle_cube.quiver"),
    },
    CorpusEntry {
        name: "two_cycle",
        text: include_str!("../corpus/two_cycle.quiver"),
    },
    CorpusEntry {
        name: "parallel_arrows",
        text: include_str!("../corpus/parallel_arrows.quiver"),
    },
    CorpusEntry {
        name: "two_loops",
        text: include_str!("../corpus/two_loops.quiver"),
    },
    CorpusEntry {
        name: "truncated_loop",
        text: include_str!("../corpus/truncated_loop.quiver"),
    },
    CorpusEntry {
        name: "loops_and_bridge",
        text: include_str!("../corpus/loops_and_bridge.quiver"),
    },
    CorpusEntry {
        name: "truncated_cycle4_cube",
        text: include_str!("../corpus/truncated_cycle4_cube.quiver"),
    },
    CorpusEntry {
        name: "square_zero",
        text: include_str!("../corpus/square_zero.quiver"),
    },
];

pub fn get(name: &str) -> Option<CorpusEntry> {
    CORPUS.iter().copied().find(|e| e.name == name)
}

/// The oriented cycle of length `r` with the relation `a_1 ⋯ a_r a_1`.
pub fn cyclic_text(r: usize) -> String {
    let mut s = format!("vertices: {r}\n");
    for i in 1..=r {
        s += &format!("arrow: a{i} : {i} -> {}\n", i % r + 1);
    }
    s += "relation:";
    for i in 1..=r {
        s += &format!(" a{i}");
    }
    s + " a1\n"
}
