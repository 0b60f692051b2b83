//! Embeddings of Latin squares, Latin squares with transversal, MOLS and
//! transversal designs into projective spaces over exact skew fields.

pub mod exactalg;
pub mod projgeom;
pub mod design;
pub mod groupcat;
pub mod embedding;
pub mod oracle;
pub mod cli;
