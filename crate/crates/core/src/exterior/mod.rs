//! Forms on an oriented 8-dimensional inner-product frame.

pub mod dense;
mod form;
mod index;
mod metric;
mod ops;

pub use form::{KForm, KFormJson, TermJson};
pub use index::{MultiIndex, DIM};
pub use metric::{Covector, FrameMetric, Mat8};
pub use ops::{
    contract_into, full_contraction, hodge_star, inner, interior_product, norm_sq, raise_form,
    star_interior_identities_check, volume_form, wedge,
};
