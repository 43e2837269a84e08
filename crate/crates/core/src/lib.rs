pub mod algebra;
pub mod contraction;
pub mod mra;
pub mod singularity;
pub mod special;
pub mod spectral;
