//! First-order and positive least fixed-point formulas, semiring
//! interpretations of literals, and their provenance values.

mod eval;
mod formula;
mod interp;
mod mcgame;
mod nnf;
mod parse;

pub use eval::{fo_eval, poslfp_eval_direct};
pub use formula::{FixKind, Formula, Term};
pub use interp::{
    make_tracking_interpretation, parse_interpretation, parse_structure, GroundAtom, KInterpretation, Literal,
    Structure, Universe,
};
pub use mcgame::{build_mc_game, game_eval, game_valuation, McGame, TerminalKind};
pub use nnf::{check_poslfp, to_nnf};
pub use parse::parse_formula;
