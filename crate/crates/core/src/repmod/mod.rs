//! Finite dimensional right modules as quiver representations.

pub mod decompose;
pub mod hom;
pub mod present;
pub mod rep;
pub mod standard;

pub use decompose::{
    basic_part, decompose, decompose_grouped, decompose_with_maps, group_isoclasses, is_brick, is_indecomposable,
    is_iso_indec, is_isomorphic, local_data, Indec, Summand,
};
pub use hom::{hom_basis, hom_dim, in_gen, in_gen_of, sum_trace_subspaces, trace_dims_of, trace_submodule, trace_subspaces};
pub use present::{
    dual_to_left, ext1_dim, min_proj_presentation, projective_cover, tau, tensor_and_tor1, tensor_dim, Presentation,
    TwoTermComplex,
};
pub use rep::{KerCokerIm, Rep, RepMap};
pub use standard::{
    injective, injective_map_between, left_mult_block, projective, projective_map, regular_module, right_mult_block,
    simple, standard_modules, StandardModules,
};
