//! Exact vector-lattice kernel over finite `C(K)` and `C(ω+1)`.

mod certificate;
mod element;
mod ideal;
mod ops;
mod radical;
mod rearrange;
mod space;

pub use certificate::{
    verify_certificate, CertificateFailure, CertificateVerdict, ConvergenceCertificate, Family,
    PointwiseLimit, Sign,
};
pub use element::Element;
pub use ideal::PrincipalIdeal;
pub use ops::{is_disjoint, join_all, lattice_binary, lattice_unary, meet_all, BinaryOp, UnaryOp};
pub use radical::{krivine_radical, RadicalElement, RadicalKind};
pub use rearrange::{decreasing_rearrangement, rearrange_all, top};
pub use space::{Point, Space};
