//! Exact Riccati-Schrodinger (RS) functions and spectra of translationally
//! shape-invariant potentials.
//!
//! Every family is written in a variable `y(x)` with `dy/dx = P(y)` and
//! `deg P <= 2`, so the potential and every RS function `w_n` are rational
//! functions of `y` with Gaussian-rational coefficients. `w_n` is built by
//! the finite-difference Backlund recursion and checked against
//! `-P·w' + w² = V - E_n` with exact arithmetic.
//!
//! ```
//! use tsip::backlund::{riccati_residual, rs_function};
//! use tsip::families::{instantiate, Family, Params};
//! use tsip::ratfun::parse_rational;
//!
//! let params = Params::from_pairs([
//!     ("A", parse_rational("2").unwrap()),
//!     ("B", parse_rational("1").unwrap()),
//!     ("alpha", parse_rational("1").unwrap()),
//! ]);
//! let morse = instantiate(Family::Morse, &params).unwrap();
//! let level = rs_function(&morse, 1).unwrap();
//! assert_eq!(level.energy, parse_rational("3").unwrap());
//! assert!(riccati_residual(&morse, &level).is_zero());
//! ```

pub mod backlund;
pub mod families;
pub mod groundstate;
pub mod ratfun;
pub mod verify;
pub mod wavefun;
