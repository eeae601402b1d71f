//! Small dense numerical kernels shared by the physics modules.
//!
//! Everything here targets matrices of dimension ≤ 36 (the vectorised 6×6
//! Lyapunov system), so plain O(n³) direct methods are used throughout.

mod dense;
mod eigen;
mod ode;
mod roots;

pub use dense::{solve_dense, DenseMatrix, DenseSolution, Lu, Scalar};
pub use eigen::{eigenvalues_real, hessenberg};
pub use ode::{integrate_fixed, Rk4, Trajectory};
pub use roots::bisect;
