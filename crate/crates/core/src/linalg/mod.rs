//! Matrices over `Z_p` and `O_K` with the sup norm: determinants, `GL_n`
//! membership, inverses and orthogonal-projection certificates.

mod certify;
mod matrix;

pub use certify::{
    certify_orthogonal_projection, is_gl_zp, is_orthonormal_columns, sample_vector,
    ProjectionCertificate,
};
pub use matrix::UMatrix;
