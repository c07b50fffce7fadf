pub mod ff;
pub mod gammoid;
pub mod cuts;
pub mod gens;
pub mod graph;
pub mod repfam;
pub mod sparsify;
