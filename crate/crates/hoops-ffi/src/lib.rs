//! C interface to the hoops toolkit: opaque handles, integer status
//! codes, and a thread-local message describing the last failure.
//!
//! Conventions:
//! - Every fallible call returns a `HoopsStatus`. Anything other than
//!   `Ok` leaves a message readable through `hoops_last_error`, valid
//!   on the calling thread until its next failing call.
//! - Handles returned through `out` parameters own their data and are
//!   released with the matching `hoops_*_free` function. Passing null
//!   to a `_free` function is a no-op.
//! - Strings returned through `out` parameters are NUL-terminated and
//!   released with `hoops_string_free`.
//! - Loops and connections travel as the same structured text the
//!   command-line tool reads and writes, so files produced by one are
//!   valid inputs to the other.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fmt::Display;
use std::ptr;

use hoops::gauge::{
    random_connection, transport, Connection, GaugeError, LieGroupSpec, PlTransport,
};
use hoops::geom::{
    decompose, loop_from_record, loop_to_record, Decomposition, GeomError, LoopRecord, PolyLoop,
};
use hoops::pathology::{counterexample_family, flatten_loop, PathologyError};
use hoops::synth::{falsify_hoop_triviality, FalsifyOutcome, SynthError};
use hoops::words::{is_identity, GroupClass, Word, WordsError};

/// Result code for every call in this interface.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HoopsStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input text or values failed validation.
    ParseError = 3,
    /// The request was well formed but outside the supported range:
    /// an enumeration budget, a precondition, or a failed search.
    Rejected = 4,
    /// An output buffer was too small; the required length was stored
    /// in the corresponding length output.
    BufferTooSmall = 5,
    /// Internal numerical failure.
    ComputeError = 6,
}

/// Structure group selector for connections and falsification.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HoopsGroup {
    /// Unit complex numbers; 1 by 1 matrices.
    U1 = 0,
    /// Unit quaternions as 2 by 2 complex matrices.
    Su2 = 1,
    /// Rotations of 3-space; 3 by 3 real matrices.
    So3 = 2,
    /// Real 2 by 2 matrices of determinant one.
    Sl2r = 3,
}

impl From<HoopsGroup> for LieGroupSpec {
    fn from(g: HoopsGroup) -> Self {
        match g {
            HoopsGroup::U1 => LieGroupSpec::U1,
            HoopsGroup::Su2 => LieGroupSpec::Su2,
            HoopsGroup::So3 => LieGroupSpec::So3,
            HoopsGroup::Sl2r => LieGroupSpec::Sl2r,
        }
    }
}

impl From<LieGroupSpec> for HoopsGroup {
    fn from(s: LieGroupSpec) -> Self {
        match s {
            LieGroupSpec::U1 => HoopsGroup::U1,
            LieGroupSpec::Su2 => HoopsGroup::Su2,
            LieGroupSpec::So3 => HoopsGroup::So3,
            LieGroupSpec::Sl2r => HoopsGroup::Sl2r,
        }
    }
}

/// Opaque handle to a polygonal loop with exact rational vertices.
pub struct HoopsLoop(PolyLoop);

/// Opaque handle to a loop decomposition over its arrangement graph.
pub struct HoopsDecomposition(Decomposition);

/// Opaque handle to a finite sum of bump one-form terms.
pub struct HoopsConnection(Connection);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: HoopsStatus, message: impl Display) -> HoopsStatus {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(text).unwrap_or_default());
    status
}

fn words_status(e: &WordsError) -> HoopsStatus {
    match e {
        WordsError::BudgetExceeded { .. } => HoopsStatus::Rejected,
        _ => HoopsStatus::ParseError,
    }
}

fn geom_fail(e: GeomError) -> HoopsStatus {
    fail(HoopsStatus::ParseError, e)
}

fn gauge_fail(e: GaugeError) -> HoopsStatus {
    fail(HoopsStatus::ParseError, e)
}

fn words_fail(e: WordsError) -> HoopsStatus {
    fail(words_status(&e), e)
}

fn synth_fail(e: SynthError) -> HoopsStatus {
    let status = match &e {
        SynthError::WitnessNotFound { .. }
        | SynthError::ClearanceTooSmall { .. }
        | SynthError::VerificationFailed { .. } => HoopsStatus::Rejected,
        SynthError::Words(w) => words_status(w),
        _ => HoopsStatus::ParseError,
    };
    fail(status, e)
}

fn pathology_fail(e: PathologyError) -> HoopsStatus {
    let status = match &e {
        PathologyError::LevelOutOfRange { .. }
        | PathologyError::OrderBeyondOracle { .. }
        | PathologyError::BadResolution(_)
        | PathologyError::BadSampleCount(_) => HoopsStatus::Rejected,
        _ => HoopsStatus::ParseError,
    };
    fail(status, e)
}

/// Reads a NUL-terminated UTF-8 argument.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HoopsStatus> {
    if ptr.is_null() {
        return Err(fail(HoopsStatus::NullArgument, "string argument is null"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|e| fail(HoopsStatus::InvalidUtf8, e))
}

/// Reads a letters buffer as a word; null is allowed only when empty.
unsafe fn read_word(letters: *const i64, len: usize) -> Result<Word, HoopsStatus> {
    if len == 0 {
        return Word::from_signed(&[]).map_err(words_fail);
    }
    if letters.is_null() {
        return Err(fail(HoopsStatus::NullArgument, "letters buffer is null"));
    }
    let values = std::slice::from_raw_parts(letters, len);
    Word::from_signed(values).map_err(words_fail)
}

fn give_string(text: String, out: *mut *mut c_char) -> HoopsStatus {
    let c = match CString::new(text) {
        Ok(c) => c,
        Err(e) => return fail(HoopsStatus::ComputeError, e),
    };
    unsafe { *out = c.into_raw() };
    HoopsStatus::Ok
}

/// Interface version as a static string; do not free.
#[no_mangle]
pub extern "C" fn hoops_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the calling thread's last failure; empty if none.
/// Valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn hoops_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this interface.
#[no_mangle]
pub unsafe extern "C" fn hoops_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Reduces a word given as signed letters (k for generator k, -k for
/// its inverse, zero invalid). Writes the reduced letters to `out`
/// and their count to `out_len`. A capacity of `len` always suffices.
/// With insufficient capacity, stores the required count in `out_len`
/// and returns `BufferTooSmall`.
#[no_mangle]
pub unsafe extern "C" fn hoops_word_reduce(
    letters: *const i64,
    len: usize,
    out: *mut i64,
    capacity: usize,
    out_len: *mut usize,
) -> HoopsStatus {
    if out_len.is_null() {
        return fail(HoopsStatus::NullArgument, "out_len is null");
    }
    let word = match read_word(letters, len) {
        Ok(w) => w,
        Err(s) => return s,
    };
    let reduced = word.reduce().to_signed();
    *out_len = reduced.len();
    if reduced.len() > capacity {
        return fail(
            HoopsStatus::BufferTooSmall,
            format!("need capacity {}, got {capacity}", reduced.len()),
        );
    }
    if !reduced.is_empty() {
        if out.is_null() {
            return fail(HoopsStatus::NullArgument, "out buffer is null");
        }
        std::ptr::copy_nonoverlapping(reduced.as_ptr(), out, reduced.len());
    }
    HoopsStatus::Ok
}

/// Decides whether the word maps to the identity under every
/// assignment of its generators into connected abelian Lie groups.
#[no_mangle]
pub unsafe extern "C" fn hoops_word_is_identity_abelian(
    letters: *const i64,
    len: usize,
    result: *mut bool,
) -> HoopsStatus {
    word_identity(letters, len, GroupClass::AbelianConnectedLie, result)
}

/// Decides whether the word maps to the identity under every
/// assignment into nonsolvable connected Lie groups; this holds only
/// for words that reduce to nothing.
#[no_mangle]
pub unsafe extern "C" fn hoops_word_is_identity_nonsolvable(
    letters: *const i64,
    len: usize,
    result: *mut bool,
) -> HoopsStatus {
    word_identity(letters, len, GroupClass::NonsolvableConnectedLie, result)
}

unsafe fn word_identity(
    letters: *const i64,
    len: usize,
    class: GroupClass,
    result: *mut bool,
) -> HoopsStatus {
    if result.is_null() {
        return fail(HoopsStatus::NullArgument, "result is null");
    }
    let word = match read_word(letters, len) {
        Ok(w) => w,
        Err(s) => return s,
    };
    match is_identity(&word, &class) {
        Ok(v) => {
            *result = v;
            HoopsStatus::Ok
        }
        Err(e) => words_fail(e),
    }
}

/// Parses a loop from structured text into a new handle.
#[no_mangle]
pub unsafe extern "C" fn hoops_loop_parse(
    text: *const c_char,
    out: *mut *mut HoopsLoop,
) -> HoopsStatus {
    if out.is_null() {
        return fail(HoopsStatus::NullArgument, "out is null");
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let record: LoopRecord = match serde_json::from_str(text) {
        Ok(r) => r,
        Err(e) => return fail(HoopsStatus::ParseError, e),
    };
    match loop_from_record(&record) {
        Ok(lp) => {
            *out = Box::into_raw(Box::new(HoopsLoop(lp)));
            HoopsStatus::Ok
        }
        Err(e) => geom_fail(e),
    }
}

/// Serializes a loop back to structured text.
#[no_mangle]
pub unsafe extern "C" fn hoops_loop_to_text(
    lp: *const HoopsLoop,
    out: *mut *mut c_char,
) -> HoopsStatus {
    if lp.is_null() || out.is_null() {
        return fail(HoopsStatus::NullArgument, "loop or out is null");
    }
    let record = loop_to_record(&(*lp).0);
    match serde_json::to_string_pretty(&record) {
        Ok(text) => give_string(text, out),
        Err(e) => fail(HoopsStatus::ComputeError, e),
    }
}

/// Releases a loop handle.
#[no_mangle]
pub unsafe extern "C" fn hoops_loop_free(lp: *mut HoopsLoop) {
    if !lp.is_null() {
        drop(Box::from_raw(lp));
    }
}

/// Decomposes a loop into a word over arrangement generators.
#[no_mangle]
pub unsafe extern "C" fn hoops_loop_decompose(
    lp: *const HoopsLoop,
    out: *mut *mut HoopsDecomposition,
) -> HoopsStatus {
    if lp.is_null() || out.is_null() {
        return fail(HoopsStatus::NullArgument, "loop or out is null");
    }
    let dec = decompose(&(*lp).0);
    *out = Box::into_raw(Box::new(HoopsDecomposition(dec)));
    HoopsStatus::Ok
}

/// Number of independent generators in the decomposition; zero for a
/// null handle.
#[no_mangle]
pub unsafe extern "C" fn hoops_decomposition_generator_count(
    dec: *const HoopsDecomposition,
) -> usize {
    if dec.is_null() {
        return 0;
    }
    (*dec).0.generator_count()
}

/// Writes the decomposition's reduced word into `out` and its length
/// into `out_len`. Query the length first with a zero capacity: the
/// call stores the requirement and returns `BufferTooSmall`.
#[no_mangle]
pub unsafe extern "C" fn hoops_decomposition_word(
    dec: *const HoopsDecomposition,
    out: *mut i64,
    capacity: usize,
    out_len: *mut usize,
) -> HoopsStatus {
    if dec.is_null() || out_len.is_null() {
        return fail(HoopsStatus::NullArgument, "decomposition or out_len is null");
    }
    let reduced = (*dec).0.word().reduce().to_signed();
    *out_len = reduced.len();
    if reduced.len() > capacity {
        return fail(
            HoopsStatus::BufferTooSmall,
            format!("need capacity {}, got {capacity}", reduced.len()),
        );
    }
    if !reduced.is_empty() {
        if out.is_null() {
            return fail(HoopsStatus::NullArgument, "out buffer is null");
        }
        std::ptr::copy_nonoverlapping(reduced.as_ptr(), out, reduced.len());
    }
    HoopsStatus::Ok
}

/// Releases a decomposition handle.
#[no_mangle]
pub unsafe extern "C" fn hoops_decomposition_free(dec: *mut HoopsDecomposition) {
    if !dec.is_null() {
        drop(Box::from_raw(dec));
    }
}

/// Parses a connection from structured text into a new handle.
#[no_mangle]
pub unsafe extern "C" fn hoops_connection_parse(
    text: *const c_char,
    out: *mut *mut HoopsConnection,
) -> HoopsStatus {
    if out.is_null() {
        return fail(HoopsStatus::NullArgument, "out is null");
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let record = match serde_json::from_str(text) {
        Ok(r) => r,
        Err(e) => return fail(HoopsStatus::ParseError, e),
    };
    match Connection::from_record(&record) {
        Ok(conn) => {
            *out = Box::into_raw(Box::new(HoopsConnection(conn)));
            HoopsStatus::Ok
        }
        Err(e) => gauge_fail(e),
    }
}

/// Serializes a connection back to structured text.
#[no_mangle]
pub unsafe extern "C" fn hoops_connection_to_text(
    conn: *const HoopsConnection,
    out: *mut *mut c_char,
) -> HoopsStatus {
    if conn.is_null() || out.is_null() {
        return fail(HoopsStatus::NullArgument, "connection or out is null");
    }
    match serde_json::to_string_pretty(&(*conn).0.to_record()) {
        Ok(text) => give_string(text, out),
        Err(e) => fail(HoopsStatus::ComputeError, e),
    }
}

/// Draws a seed-deterministic random connection with `terms` bump
/// terms on the planar rectangle [x_lo, x_hi] x [y_lo, y_hi].
#[no_mangle]
pub unsafe extern "C" fn hoops_connection_random(
    group: HoopsGroup,
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
    terms: usize,
    seed: u64,
    out: *mut *mut HoopsConnection,
) -> HoopsStatus {
    if out.is_null() {
        return fail(HoopsStatus::NullArgument, "out is null");
    }
    let region = [(x_lo, x_hi), (y_lo, y_hi)];
    match random_connection(group.into(), &region, terms, seed) {
        Ok(conn) => {
            *out = Box::into_raw(Box::new(HoopsConnection(conn)));
            HoopsStatus::Ok
        }
        Err(e) => gauge_fail(e),
    }
}

/// Stores the connection's structure group in `out`.
#[no_mangle]
pub unsafe extern "C" fn hoops_connection_group(
    conn: *const HoopsConnection,
    out: *mut HoopsGroup,
) -> HoopsStatus {
    if conn.is_null() || out.is_null() {
        return fail(HoopsStatus::NullArgument, "connection or out is null");
    }
    *out = (*conn).0.spec().into();
    HoopsStatus::Ok
}

/// Releases a connection handle.
#[no_mangle]
pub unsafe extern "C" fn hoops_connection_free(conn: *mut HoopsConnection) {
    if !conn.is_null() {
        drop(Box::from_raw(conn));
    }
}

/// Side length of the holonomy matrix for a group: 1, 2, 3, 2.
#[no_mangle]
pub extern "C" fn hoops_group_matrix_dim(group: HoopsGroup) -> usize {
    match group {
        HoopsGroup::U1 => 1,
        HoopsGroup::Su2 | HoopsGroup::Sl2r => 2,
        HoopsGroup::So3 => 3,
    }
}

/// Transports the loop through the connection with `steps` substeps
/// per edge. The matrix is written row major as interleaved real and
/// imaginary parts, 2 * n * n values for matrix side n (see
/// `hoops_group_matrix_dim`); `BufferTooSmall` reports the required
/// value count. `error_out` receives a step-halving error estimate
/// and `residual_out` the distance from the group manifold; both may
/// be null.
#[no_mangle]
pub unsafe extern "C" fn hoops_holonomy(
    conn: *const HoopsConnection,
    lp: *const HoopsLoop,
    steps: usize,
    matrix_out: *mut f64,
    matrix_capacity: usize,
    error_out: *mut f64,
    residual_out: *mut f64,
) -> HoopsStatus {
    if conn.is_null() || lp.is_null() || matrix_out.is_null() {
        return fail(HoopsStatus::NullArgument, "connection, loop, or matrix_out is null");
    }
    let path = PlTransport::from_loop(&(*lp).0);
    let hol = match transport(&(*conn).0, &path, steps) {
        Ok(h) => h,
        Err(e) => return gauge_fail(e),
    };
    let rows = hol.matrix.to_complex_rows();
    let needed = 2 * rows.len() * rows.len();
    if matrix_capacity < needed {
        return fail(
            HoopsStatus::BufferTooSmall,
            format!("need capacity {needed}, got {matrix_capacity}"),
        );
    }
    let mut cursor = matrix_out;
    for row in &rows {
        for [re, im] in row {
            *cursor = *re;
            cursor = cursor.add(1);
            *cursor = *im;
            cursor = cursor.add(1);
        }
    }
    if !error_out.is_null() {
        *error_out = hol.error;
    }
    if !residual_out.is_null() {
        *residual_out = hol.residual;
    }
    HoopsStatus::Ok
}

/// Searches for a connection into the chosen group whose holonomy
/// moves the loop off the identity. On success `nontrivial_out` tells
/// the verdict, and for a nontrivial loop `distance_out` receives the
/// holonomy's distance from the identity and `witness_out` (if not
/// null) a handle to the separating connection; for a trivial loop
/// the distance is zero and the witness is null. Returns `Rejected`
/// when the search cannot certify either way.
#[no_mangle]
pub unsafe extern "C" fn hoops_falsify_triviality(
    lp: *const HoopsLoop,
    group: HoopsGroup,
    seed: u64,
    nontrivial_out: *mut bool,
    distance_out: *mut f64,
    witness_out: *mut *mut HoopsConnection,
) -> HoopsStatus {
    if lp.is_null() || nontrivial_out.is_null() {
        return fail(HoopsStatus::NullArgument, "loop or nontrivial_out is null");
    }
    if !witness_out.is_null() {
        *witness_out = ptr::null_mut();
    }
    match falsify_hoop_triviality(&(*lp).0, group.into(), seed) {
        Ok(FalsifyOutcome::Trivial) => {
            *nontrivial_out = false;
            if !distance_out.is_null() {
                *distance_out = 0.0;
            }
            HoopsStatus::Ok
        }
        Ok(FalsifyOutcome::Nontrivial(n)) => {
            *nontrivial_out = true;
            if !distance_out.is_null() {
                *distance_out = n.distance;
            }
            if !witness_out.is_null() {
                *witness_out = Box::into_raw(Box::new(HoopsConnection(n.connection)));
            }
            HoopsStatus::Ok
        }
        Err(e) => synth_fail(e),
    }
}

/// Builds the cascade loop with the given number of levels, transports
/// it through `trials` random abelian connections (seeds `seed`,
/// `seed + 1`, ...) and stores the largest holonomy distance from the
/// identity in `max_distance_out`. Flattens the loop at the given
/// polyline resolution and stores its reduced word length in
/// `word_len_out` (null to skip the flattening). Demonstrates a loop
/// every abelian holonomy reads as trivial while its word stays alive.
#[no_mangle]
pub unsafe extern "C" fn hoops_cascade_probe(
    levels: u32,
    trials: u64,
    seed: u64,
    steps: usize,
    resolution: usize,
    max_distance_out: *mut f64,
    word_len_out: *mut usize,
) -> HoopsStatus {
    if max_distance_out.is_null() {
        return fail(HoopsStatus::NullArgument, "max_distance_out is null");
    }
    let family = match counterexample_family(levels) {
        Ok(f) => f,
        Err(e) => return pathology_fail(e),
    };
    let amp = match family.level_weight(1) {
        Ok(w) => w + 0.1,
        Err(e) => return pathology_fail(e),
    };
    let region = [(-0.2, 1.2), (-amp, amp)];
    let mut max_distance = 0.0f64;
    for trial in 0..trials {
        let conn = match random_connection(LieGroupSpec::U1, &region, 3, seed + trial) {
            Ok(c) => c,
            Err(e) => return gauge_fail(e),
        };
        let hol = match transport(&conn, family.loop_path(), steps) {
            Ok(h) => h,
            Err(e) => return gauge_fail(e),
        };
        max_distance = max_distance.max(hol.matrix.distance_to_identity());
    }
    *max_distance_out = max_distance;
    if !word_len_out.is_null() {
        let flattened = match flatten_loop(&family, resolution) {
            Ok(f) => f,
            Err(e) => return pathology_fail(e),
        };
        *word_len_out = decompose(&flattened).word().reduce().len();
    }
    HoopsStatus::Ok
}
