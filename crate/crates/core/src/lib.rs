pub mod cli;
pub mod fuel;
pub mod mltt;
pub mod set_model;
pub mod stlc;
pub mod surface;
pub mod systemf;
