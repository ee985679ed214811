//! SU(3)- and G₂-structures on Lie algebras.

mod construct;
mod metric;
mod structures;

pub use construct::{build_closed, build_coclosed, reduce_closed, reduce_coclosed};
pub use metric::{g2_metric, Definiteness, su3_acs, su3_metric, MetricMatrix};
pub use structures::{
    canonical_g2_closed_candidate, canonical_g2_coclosed_candidate, canonical_su3, classify_g2, classify_su3,
    closed_candidate, coclosed_candidate, embed, embed_algebra, phi_volume, wedge_power, Form, G2Class,
    G2Structure, SU3Structure, Su3Class,
};
