//! C ABI over `gameprov`.
//!
//! Every function returns a [`GpStatus`]; on failure the message is kept in a
//! thread-local buffer readable through [`gp_last_error`]. Strings handed out
//! by the library must be released with [`gp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gameprov::fixpoint::{solve_game, Fixpoint};
use gameprov::game::io::parse_game;
use gameprov::game::{acyclic_valuation, BasicValuation, GameGraph, Player};
use gameprov::logic::{game_eval, parse_formula, parse_interpretation, poslfp_eval_direct};
use gameprov::{Error, ErrorClass, Semiring, Value};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpStatus {
    Ok = 0,
    InvalidArgument = 1,
    Parse = 2,
    Semantic = 3,
    NoConvergence = 4,
    OutOfRange = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpMode {
    Acyclic = 0,
    Lfp = 1,
    Gfp = 2,
}

/// A semiring selected by name, e.g. `"sorpinf"` or `"series:4"`.
pub struct GpSemiring(Semiring);

/// A parsed game together with both players' basic valuations.
pub struct GpGame {
    sr: Semiring,
    graph: GameGraph,
    basics: [BasicValuation; 2],
}

/// Values of a game valuation, one per position.
pub struct GpValuation {
    sr: Semiring,
    values: Vec<Value>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Fail(GpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e.class() {
            ErrorClass::Parse => GpStatus::Parse,
            ErrorClass::Semantic => GpStatus::Semantic,
            ErrorClass::NoConvergence => GpStatus::NoConvergence,
        };
        Fail(status, e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(GpStatus::InvalidArgument, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            GpStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            GpStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(&format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| invalid(&format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| invalid("value contains a nul byte"))?;
    write_out(out, c.into_raw())
}

fn player(p: u8) -> Result<Player, Fail> {
    Player::from_index(p).ok_or_else(|| Fail(GpStatus::OutOfRange, format!("player {p} is not 0 or 1")))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn gp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn gp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gp_semiring_new(name: *const c_char, out: *mut *mut GpSemiring) -> GpStatus {
    guard(|| {
        let sr = Semiring::from_name(text(name, "name")?)?;
        write_out(out, Box::into_raw(Box::new(GpSemiring(sr))))
    })
}

/// # Safety
/// `sr` must be null or a handle from [`gp_semiring_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_semiring_free(sr: *mut GpSemiring) {
    if !sr.is_null() {
        drop(Box::from_raw(sr));
    }
}

/// Canonical name of the semiring.
///
/// # Safety
/// `sr` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gp_semiring_name(sr: *const GpSemiring, out: *mut *mut c_char) -> GpStatus {
    guard(|| write_string(out, handle(sr, "semiring")?.0.name()))
}

/// Parses `value` and writes its canonical form.
///
/// # Safety
/// `sr` must be a live handle; `value` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gp_value_normalize(
    sr: *const GpSemiring,
    value: *const c_char,
    out: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let sr = &handle(sr, "semiring")?.0;
        let v = sr.parse_value(text(value, "value")?)?;
        write_string(out, sr.format(&v))
    })
}

unsafe fn binop(
    sr: *const GpSemiring,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
    op: fn(&Semiring, &Value, &Value) -> gameprov::Result<Value>,
) -> GpStatus {
    guard(|| {
        let sr = &handle(sr, "semiring")?.0;
        let x = sr.parse_value(text(a, "left operand")?)?;
        let y = sr.parse_value(text(b, "right operand")?)?;
        write_string(out, sr.format(&op(sr, &x, &y)?))
    })
}

/// # Safety
/// As for [`gp_value_normalize`], with two operands.
#[no_mangle]
pub unsafe extern "C" fn gp_value_add(
    sr: *const GpSemiring,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> GpStatus {
    binop(sr, a, b, out, Semiring::add)
}

/// # Safety
/// As for [`gp_value_normalize`], with two operands.
#[no_mangle]
pub unsafe extern "C" fn gp_value_mul(
    sr: *const GpSemiring,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> GpStatus {
    binop(sr, a, b, out, Semiring::mul)
}

/// Parses a game description whose values live in `sr`.
///
/// # Safety
/// `sr` must be a live handle; `source` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gp_game_parse(
    sr: *const GpSemiring,
    source: *const c_char,
    out: *mut *mut GpGame,
) -> GpStatus {
    guard(|| {
        let sr = handle(sr, "semiring")?.0.clone();
        let (graph, basics) = parse_game(text(source, "source")?, &sr)?;
        write_out(out, Box::into_raw(Box::new(GpGame { sr, graph, basics })))
    })
}

/// # Safety
/// `g` must be null or a handle from [`gp_game_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_game_free(g: *mut GpGame) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gp_game_len(g: *const GpGame, out: *mut usize) -> GpStatus {
    guard(|| write_out(out, handle(g, "game")?.graph.len()))
}

/// Index of the position called `name`.
///
/// # Safety
/// `g` must be a live handle; `name` a nul-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gp_game_position(g: *const GpGame, name: *const c_char, out: *mut usize) -> GpStatus {
    guard(|| {
        let g = handle(g, "game")?;
        let name = text(name, "name")?;
        let v = g
            .graph
            .position(name)
            .ok_or_else(|| Fail(GpStatus::OutOfRange, format!("no position `{name}`")))?;
        write_out(out, v)
    })
}

/// Game valuation for `player` (0 or 1).
///
/// # Safety
/// `g` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gp_game_evaluate(
    g: *const GpGame,
    player_index: u8,
    mode: GpMode,
    out: *mut *mut GpValuation,
) -> GpStatus {
    guard(|| {
        let g = handle(g, "game")?;
        let basic = &g.basics[player(player_index)?.index() as usize];
        let values = match mode {
            GpMode::Acyclic => acyclic_valuation(&g.graph, basic)?,
            GpMode::Lfp => solve_game(&g.graph, basic, Fixpoint::Mu, None)?.values,
            GpMode::Gfp => solve_game(&g.graph, basic, Fixpoint::Nu, None)?.values,
        };
        let val = GpValuation {
            sr: g.sr.clone(),
            values,
        };
        write_out(out, Box::into_raw(Box::new(val)))
    })
}

/// # Safety
/// `v` must be null or a handle from [`gp_game_evaluate`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gp_valuation_free(v: *mut GpValuation) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Formatted value at `position`.
///
/// # Safety
/// `v` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gp_valuation_get(v: *const GpValuation, position: usize, out: *mut *mut c_char) -> GpStatus {
    guard(|| {
        let v = handle(v, "valuation")?;
        let x = v
            .values
            .get(position)
            .ok_or_else(|| Fail(GpStatus::OutOfRange, format!("position {position} out of range")))?;
        write_string(out, v.sr.format(x))
    })
}

/// Value of a sentence under an interpretation, through the evaluation game
/// or, with `direct` set, by direct fixed-point evaluation.
///
/// # Safety
/// `sr` must be a live handle; strings nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gp_formula_evaluate(
    sr: *const GpSemiring,
    formula: *const c_char,
    interpretation: *const c_char,
    direct: bool,
    out: *mut *mut c_char,
) -> GpStatus {
    guard(|| {
        let sr = &handle(sr, "semiring")?.0;
        let phi = parse_formula(text(formula, "formula")?)?;
        let pi = parse_interpretation(text(interpretation, "interpretation")?, sr)?;
        let v = if direct {
            poslfp_eval_direct(&pi, &phi)?
        } else {
            game_eval(&pi, &phi, Player::Zero)?
        };
        write_string(out, sr.format(&v))
    })
}
