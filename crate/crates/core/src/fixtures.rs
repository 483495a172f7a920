//! Small named instances used by the tests, the CLI and the documentation.
//!
//! * `paper9`: 7 vertices, 9 edges `e1..e9`, given as its incidence matrix.
//! * `fig-small`: a pendant edge `a` attached to a triangle `{b, c, d}`.
//! * `u42`: four points on a line, `U(2, 4)`.
//! * `u25`: five points on a line, `U(2, 5)`.
//! * `kuw-remark`: two parallel points `x1, x3`, a third point `x2`, two loops.
//!   Element order and weights are chosen so that block-wise basis search
//!   settles on `{x2, x3}` although `{x1, x2}` is lighter.

use crate::error::Result;
use crate::ground::{ElementSet, GroundSet};
use crate::instance::Instance;
use crate::oracle::OracleSession;
use crate::representations::{BinaryRep, GraphRep, UniformRep};
use crate::weights::WeightMap;

pub const NAMES: &[&str] = &["paper9", "paper9-graph", "fig-small", "u42", "u25", "kuw-remark"];

/// An instance with its reference weights.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub instance: Instance,
    pub weights: WeightMap<f64>,
    /// Block partition the basis search is expected to use, when it matters.
    pub blocks: Option<Vec<ElementSet>>,
}

const PAPER9_EDGES: [(usize, usize); 9] = [
    (0, 1),
    (2, 4),
    (3, 6),
    (3, 5),
    (5, 6),
    (0, 3),
    (3, 4),
    (2, 3),
    (1, 2),
];

/// The 9-edge running example. Vertex `i` is row `i` of the incidence matrix.
pub fn paper9_graph() -> GraphRep {
    GraphRep::numbered(7, &PAPER9_EDGES).expect("valid fixture")
}

pub fn paper9_binary() -> (BinaryRep, GroundSet) {
    let rows = [
        [1, 0, 0, 0, 0, 1, 0, 0, 0],
        [1, 0, 0, 0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0, 0, 1, 1],
        [0, 0, 1, 1, 0, 1, 1, 1, 0],
        [0, 1, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 1, 0, 0, 0, 0],
    ];
    let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
    (
        BinaryRep::from_rows(&rows).expect("valid fixture"),
        GroundSet::numbered(9).expect("valid fixture"),
    )
}

pub fn paper9_session() -> OracleSession {
    let (rep, g) = paper9_binary();
    Instance::binary(rep, g).expect("valid fixture").session()
}

pub fn fig_small_graph() -> GraphRep {
    GraphRep::new(
        4,
        vec![
            (0, 1, "a".into()),
            (1, 2, "b".into()),
            (2, 3, "c".into()),
            (1, 3, "d".into()),
        ],
    )
    .expect("valid fixture")
}

pub fn fig_small_session() -> OracleSession {
    Instance::graph(fig_small_graph()).session()
}

pub fn uniform_session(n: usize, r: usize) -> OracleSession {
    Instance::uniform(UniformRep::new(n, r).expect("valid fixture"))
        .expect("valid fixture")
        .session()
}

pub fn u42_session() -> OracleSession {
    uniform_session(4, 2)
}

pub fn u25_session() -> OracleSession {
    uniform_session(5, 2)
}

/// Columns in element order `x2, x3, x1, l1, l2`.
pub fn kuw_remark_instance() -> Instance {
    let rep = BinaryRep::new(2, vec![0b10, 0b01, 0b01, 0, 0]).expect("valid fixture");
    let ground = GroundSet::new(["x2", "x3", "x1", "l1", "l2"].map(String::from).to_vec())
        .expect("valid fixture");
    Instance::binary(rep, ground).expect("valid fixture")
}

pub fn by_name(name: &str) -> Option<Fixture> {
    let fixture = |name, instance: Instance, weights| Fixture {
        name,
        instance,
        weights,
        blocks: None,
    };
    Some(match name {
        "paper9" => {
            let (rep, g) = paper9_binary();
            fixture("paper9", Instance::binary(rep, g).ok()?, WeightMap::by_index(9))
        }
        "paper9-graph" => fixture("paper9-graph", Instance::graph(paper9_graph()), WeightMap::by_index(9)),
        "fig-small" => fixture("fig-small", Instance::graph(fig_small_graph()), WeightMap::by_index(4)),
        "u42" => fixture(
            "u42",
            Instance::uniform(UniformRep::new(4, 2).ok()?).ok()?,
            WeightMap::by_index(4),
        ),
        "u25" => fixture(
            "u25",
            Instance::uniform(UniformRep::new(5, 2).ok()?).ok()?,
            WeightMap::by_index(5),
        ),
        "kuw-remark" => Fixture {
            name: "kuw-remark",
            instance: kuw_remark_instance(),
            weights: kuw_remark_weights().ok()?,
            blocks: Some(vec![
                ElementSet::from_indices([0, 1]),
                ElementSet::from_indices([2, 3]),
                ElementSet::from_indices([4]),
            ]),
        },
        _ => return None,
    })
}

/// `w(x1) < w(x2) < w(x3)`, loops heaviest.
pub fn kuw_remark_weights() -> Result<WeightMap<f64>> {
    WeightMap::from_pairs(
        &kuw_remark_instance().ground,
        &[("x1", 1.0), ("x2", 2.0), ("x3", 3.0), ("l1", 4.0), ("l2", 5.0)],
    )
}
