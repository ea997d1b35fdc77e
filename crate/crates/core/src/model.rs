//! The three models in scope and the data every other module shares.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::root_system::{CartanType, Root, RootSystem, Weight};
use crate::word_engine::{builtin_i0, builtin_ij};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    E6R1,
    E6R6,
    E7R7,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::E6R1, Model::E6R6, Model::E7R7];

    pub fn new(kind: CartanType, node: usize) -> Result<Model, Error> {
        match (kind, node) {
            (CartanType::E6, 1) => Ok(Model::E6R1),
            (CartanType::E6, 6) => Ok(Model::E6R6),
            (CartanType::E7, 7) => Ok(Model::E7R7),
            _ => Err(Error::Unsupported(format!("model {kind} node {node}"))),
        }
    }

    pub fn kind(self) -> CartanType {
        match self {
            Model::E6R1 | Model::E6R6 => CartanType::E6,
            Model::E7R7 => CartanType::E7,
        }
    }

    pub fn node(self) -> usize {
        match self {
            Model::E6R1 => 1,
            Model::E6R6 => 6,
            Model::E7R7 => 7,
        }
    }

    /// The model whose node is `r*` (`w_0 alpha_r = -alpha_{r*}`).
    pub fn dual(self) -> Model {
        match self {
            Model::E6R1 => Model::E6R6,
            Model::E6R6 => Model::E6R1,
            Model::E7R7 => Model::E7R7,
        }
    }

    pub fn data(self) -> &'static ModelData {
        static CELLS: [OnceLock<ModelData>; 3] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        CELLS[self as usize].get_or_init(|| ModelData::build(self).expect("built-in model data"))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} r={}", self.kind(), self.node())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (t, n) = s
            .split_once([':', ',', '/'])
            .ok_or_else(|| Error::Parse(format!("model {s:?}, expected TYPE:NODE")))?;
        let node = n
            .trim()
            .trim_start_matches("r=")
            .parse()
            .map_err(|_| Error::Parse(format!("node {n:?}")))?;
        Model::new(CartanType::parse(t)?, node)
    }
}

#[derive(Debug)]
pub struct ModelData {
    pub model: Model,
    pub rs: RootSystem,
    pub node: usize,
    /// i_0 = i^J . i_{J*}
    pub i0: Vec<usize>,
    /// convex order attached to i0
    pub roots: Vec<Root>,
    /// |Phi^+(J)|: the first `m` roots
    pub m: usize,
    /// nilradical roots as weights, for wt(c)
    pub root_weights: Vec<Weight>,
    pub theta: Root,
    /// Levi nodes J = I \ {r}
    pub levi: Vec<usize>,
}

impl ModelData {
    fn build(model: Model) -> Result<ModelData, Error> {
        let kind = model.kind();
        let r = model.node();
        let rs = RootSystem::new(kind)?;
        let i0 = builtin_i0(kind, r)?.letters;
        let m = builtin_ij(kind, r)?.len();
        let roots = rs.roots_from_word(&i0)?;
        let root_weights = roots[..m].iter().map(|b| rs.root_to_weight(b)).collect();
        let theta = rs.highest_root();
        if roots[m - 1] != theta {
            return Err(Error::Mismatch(
                "theta is not the last nilradical root".into(),
            ));
        }
        let levi = (1..=rs.rank).filter(|&i| i != r).collect();
        Ok(ModelData {
            model,
            rs,
            node: r,
            i0,
            roots,
            m,
            root_weights,
            theta,
            levi,
        })
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn theta_pos(&self) -> usize {
        self.m - 1
    }

    pub fn format_root(&self, k: usize) -> String {
        self.rs.format_root(&self.roots[k])
    }
}
