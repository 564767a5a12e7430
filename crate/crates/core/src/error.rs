use thiserror::Error;

use crate::graph::GraphError;
use crate::ncalg::NcError;

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Algebra(#[from] NcError),

    #[error(transparent)]
    Game(#[from] crate::game::GameError),

    #[error(transparent)]
    Bcs(#[from] crate::bcs::BcsError),

    #[error(transparent)]
    GameAlgebra(#[from] crate::game_algebra::AlgebraError),

    #[error(transparent)]
    QuantumGraph(#[from] crate::qgraph::QgraphError),

    #[error(transparent)]
    Certificate(#[from] crate::certificates::CertError),
}
