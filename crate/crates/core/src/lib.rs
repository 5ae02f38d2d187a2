#![cfg_attr(not(test), no_std)]
//! Exact arithmetic for zeta functions and Fukui invariants of real
//! Brieskorn and plane-curve germs.

extern crate alloc;

pub mod classify;
pub mod fukui;
pub mod germ;
pub mod poly;
pub mod resolution;
pub mod series;
pub mod sign;
pub mod toric;
pub mod zeta;

pub use fukui::{ArithSet, FukuiTriple};
pub use germ::{BrieskornGerm, BrieskornTerm, GermError};
pub use resolution::{dl_signed, dl_total, validate_resolution, ResolutionData};
pub use series::{expand_rational, GeomFactor, RationalZeta, SeriesError, TruncSeries, ZetaTerm};
pub use sign::Sign;
pub use toric::{build_resolution, SupportPoly, ToricError, WeightVector};
pub use zeta::{ModifiedTriple, ZetaError, ZetaTriple};
