//! C ABI over `ringplane`.
//!
//! Planes are opaque handles created by `rp_plane_new` / `rp_plane_new_pn`
//! and released with `rp_plane_free`. Points and lines are addressed by
//! their index in the plane's enumeration order. Every fallible call
//! returns an [`RpStatus`]; on failure a message is available from
//! `rp_last_error_message` until the next call on the same thread.
//!
//! Variable-length results are written to caller buffers. When a buffer is
//! too small the call returns `RP_STATUS_BUFFER_TOO_SMALL` and stores the
//! required length in the `len` out-parameter.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use ringplane::export;
use ringplane::verify::{verify, Depth};
use ringplane::{CoordTriple, Error, FieldCtx, HomTag, PlaneConfig, PlaneCtx, RelationKind, RingElem};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpStatus {
    Ok = 0,
    DomainError = 1,
    CapacityError = 2,
    ParseError = 3,
    NullPointer = 4,
    OutOfRange = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpTag {
    Hat = 0,
    Tilde = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpRelation {
    Identical = 0,
    Neighbour = 1,
    Distant = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpDepth {
    Fast = 0,
    Definitional = 1,
    Oracle = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpExport {
    PlaneJson = 0,
    IncidenceCsv = 1,
    GraphDot = 2,
    GraphJson = 3,
    GraphCsv = 4,
}

/// A ring element `[a,b]`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RpRingElem {
    pub a: u32,
    pub b: u32,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RpTriple {
    pub c: [RpRingElem; 3],
}

/// Opaque plane handle.
pub struct RpPlane {
    inner: PlaneCtx,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: RpStatus, msg: impl Into<String>) -> RpStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> RpStatus {
    let status = match &e {
        Error::Domain(_) => RpStatus::DomainError,
        Error::Capacity(_) => RpStatus::CapacityError,
        Error::Parse(_) => RpStatus::ParseError,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> RpStatus) -> RpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(RpStatus::Panic, "internal panic"),
    }
}

fn to_triple(t: &CoordTriple) -> RpTriple {
    RpTriple { c: t.0.map(|x| RpRingElem { a: x.a, b: x.b }) }
}

fn from_triple(t: &RpTriple) -> CoordTriple {
    CoordTriple(t.c.map(|x| RingElem::new(x.a, x.b)))
}

fn tag(t: RpTag) -> HomTag {
    match t {
        RpTag::Hat => HomTag::Hat,
        RpTag::Tilde => HomTag::Tilde,
    }
}

unsafe fn plane_ref<'a>(plane: *const RpPlane) -> Result<&'a PlaneCtx, RpStatus> {
    // SAFETY: caller passes a handle from rp_plane_new* that is not yet freed
    unsafe { plane.as_ref() }.map(|p| &p.inner).ok_or_else(|| fail(RpStatus::NullPointer, "null plane handle"))
}

fn check_index(plane: &PlaneCtx, index: usize) -> Result<(), RpStatus> {
    if index < plane.num_points() {
        Ok(())
    } else {
        Err(fail(RpStatus::OutOfRange, format!("index {index} is out of range (size {})", plane.num_points())))
    }
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), RpStatus> {
    if out.is_null() {
        return Err(fail(RpStatus::NullPointer, "null output pointer"));
    }
    // SAFETY: non-null and, by contract, valid for writes
    unsafe { out.write(value) };
    Ok(())
}

unsafe fn write_list(values: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> Result<(), RpStatus> {
    unsafe { write_out(len, values.len())? };
    if values.len() > cap {
        return Err(fail(RpStatus::BufferTooSmall, format!("buffer holds {cap}, need {}", values.len())));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(fail(RpStatus::NullPointer, "null buffer"));
        }
        // SAFETY: buf is valid for `cap >= values.len()` writes by contract
        unsafe { ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len()) };
    }
    Ok(())
}

fn status(r: Result<(), RpStatus>) -> RpStatus {
    match r {
        Ok(()) => RpStatus::Ok,
        Err(s) => s,
    }
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next `rp_*` call on the same thread.
#[no_mangle]
pub extern "C" fn rp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

fn new_plane(field: Result<FieldCtx, Error>, out: *mut *mut RpPlane) -> RpStatus {
    guard(|| {
        if out.is_null() {
            return fail(RpStatus::NullPointer, "null output pointer");
        }
        let built = field.and_then(|f| PlaneCtx::build(Arc::new(f), &PlaneConfig::from_env()));
        match built {
            Ok(inner) => {
                // SAFETY: out checked non-null above
                unsafe { *out = Box::into_raw(Box::new(RpPlane { inner })) };
                RpStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Builds the plane of order `q` (a prime power).
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_new(q: u64, out: *mut *mut RpPlane) -> RpStatus {
    new_plane(FieldCtx::from_order(q), out)
}

/// Builds the plane over GF(p^n).
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_new_pn(p: u32, n: u32, out: *mut *mut RpPlane) -> RpStatus {
    new_plane(FieldCtx::new(p, n), out)
}

/// # Safety
/// `plane` must come from `rp_plane_new*` and not be used afterwards.
/// NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_free(plane: *mut RpPlane) {
    if !plane.is_null() {
        // SAFETY: handle was produced by Box::into_raw in new_plane
        drop(unsafe { Box::from_raw(plane) });
    }
}

/// Order `q` of the plane, or 0 for NULL.
///
/// # Safety
/// `plane` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_order(plane: *const RpPlane) -> u32 {
    unsafe { plane_ref(plane) }.map_or(0, |p| p.order())
}

/// Number of points (equal to the number of lines), or 0 for NULL.
///
/// # Safety
/// `plane` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_point_count(plane: *const RpPlane) -> usize {
    unsafe { plane_ref(plane) }.map_or(0, |p| p.num_points())
}

/// Canonical coordinates of point (or line) `index`.
///
/// # Safety
/// `plane` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_coords(plane: *const RpPlane, index: usize, out: *mut RpTriple) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, index)?;
            unsafe { write_out(out, to_triple(p.point(index).canonical())) }
        })())
    })
}

/// Index of the class containing an arbitrary admissible triple.
///
/// # Safety
/// `plane` must be a live handle, `triple` readable and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_locate(plane: *const RpPlane, triple: *const RpTriple, out: *mut usize) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            // SAFETY: caller guarantees triple is readable when non-null
            let t = unsafe { triple.as_ref() }.ok_or_else(|| fail(RpStatus::NullPointer, "null triple"))?;
            let found = p.locate_point(&from_triple(t)).map_err(from_error)?;
            unsafe { write_out(out, found.index()) }
        })())
    })
}

/// # Safety
/// `plane` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_incident(
    plane: *const RpPlane,
    line: usize,
    point: usize,
    out: *mut bool,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, line)?;
            check_index(p, point)?;
            let v = p.incident(p.line(line), p.point(point)).map_err(from_error)?;
            unsafe { write_out(out, v) }
        })())
    })
}

/// # Safety
/// `plane` must be a live handle, `buf` valid for `cap` writes, `len`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_points_on_line(
    plane: *const RpPlane,
    line: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, line)?;
            let v = p.points_on_line(p.line(line)).map_err(from_error)?;
            unsafe { write_list(&v, buf, cap, len) }
        })())
    })
}

/// # Safety
/// As for `rp_plane_points_on_line`.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_lines_through_point(
    plane: *const RpPlane,
    point: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, point)?;
            let v = p.lines_through_point(p.point(point)).map_err(from_error)?;
            unsafe { write_list(&v, buf, cap, len) }
        })())
    })
}

/// Relation between two points. With `definitional` the joining lines are
/// counted by ring incidence; otherwise the shared-projection predicate is
/// used.
///
/// # Safety
/// `plane` must be a live handle; `kind` and `joining_lines` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_relate(
    plane: *const RpPlane,
    a: usize,
    b: usize,
    definitional: bool,
    kind: *mut RpRelation,
    joining_lines: *mut usize,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, a)?;
            check_index(p, b)?;
            let (pa, pb) = (p.point(a), p.point(b));
            let rel = if definitional { p.relate(pa, pb) } else { p.relate_fast(pa, pb) }.map_err(from_error)?;
            let k = match rel.kind {
                RelationKind::Identical => RpRelation::Identical,
                RelationKind::Neighbour => RpRelation::Neighbour,
                RelationKind::Distant => RpRelation::Distant,
            };
            unsafe {
                write_out(kind, k)?;
                write_out(joining_lines, rel.joining_line_count)
            }
        })())
    })
}

/// # Safety
/// As for `rp_plane_points_on_line`.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_neighbourhood(
    plane: *const RpPlane,
    point: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, point)?;
            let v = p.neighbourhood(p.point(point)).map_err(from_error)?;
            unsafe { write_list(&v, buf, cap, len) }
        })())
    })
}

/// # Safety
/// As for `rp_plane_points_on_line`.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_common_neighbours(
    plane: *const RpPlane,
    a: usize,
    b: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, a)?;
            check_index(p, b)?;
            let v = p.common_neighbours(p.point(a), p.point(b)).map_err(from_error)?;
            unsafe { write_list(&v, buf, cap, len) }
        })())
    })
}

/// Image of a point in PG(2,q): canonical coordinates and index.
///
/// # Safety
/// `plane` must be a live handle; `coords` valid for 3 writes; `index`
/// writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_project_point(
    plane: *const RpPlane,
    which: RpTag,
    point: usize,
    coords: *mut u32,
    index: *mut usize,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, point)?;
            let img = p.project_point(tag(which), p.point(point)).map_err(from_error)?;
            if coords.is_null() {
                return Err(fail(RpStatus::NullPointer, "null coordinate buffer"));
            }
            // SAFETY: coords valid for 3 writes by contract
            unsafe { ptr::copy_nonoverlapping(img.coords.as_ptr(), coords, 3) };
            if !index.is_null() {
                unsafe { write_out(index, img.index)? };
            }
            Ok(())
        })())
    })
}

/// Splits the neighbourhood of `point` under one reduction. Merged
/// neighbours go to `merged`; spread neighbours go to `spread_points` with
/// their PG(2,q) image index at the same position in `spread_images`.
///
/// # Safety
/// `plane` must be a live handle; each buffer valid for its capacity;
/// length pointers writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_split(
    plane: *const RpPlane,
    point: usize,
    which: RpTag,
    merged: *mut usize,
    merged_cap: usize,
    merged_len: *mut usize,
    spread_points: *mut usize,
    spread_images: *mut usize,
    spread_cap: usize,
    spread_len: *mut usize,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, point)?;
            let split = p.neighbourhood_split(p.point(point), tag(which)).map_err(from_error)?;
            let keys: Vec<usize> = split.spread.keys().copied().collect();
            let images: Vec<usize> = split.spread.values().copied().collect();
            unsafe {
                write_list(&split.merged, merged, merged_cap, merged_len)?;
                write_list(&keys, spread_points, spread_cap, spread_len)?;
                write_list(&images, spread_images, spread_cap, spread_len)
            }
        })())
    })
}

/// # Safety
/// `plane` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_complementarity(plane: *const RpPlane, point: usize, out: *mut bool) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, point)?;
            let v = p.complementarity_check(p.point(point)).map_err(from_error)?;
            unsafe { write_out(out, v) }
        })())
    })
}

/// # Safety
/// `plane` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_line_covering(plane: *const RpPlane, line: usize, out: *mut bool) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            check_index(p, line)?;
            let v = p.line_covering_check(p.line(line)).map_err(from_error)?;
            unsafe { write_out(out, v) }
        })())
    })
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), RpStatus> {
    let c = CString::new(text).map_err(|_| fail(RpStatus::Panic, "output contains a NUL byte"))?;
    unsafe { write_out(out, c.into_raw()) }
}

/// Renders the plane or its neighbour graph. The string must be released
/// with `rp_string_free`.
///
/// # Safety
/// `plane` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_export(plane: *const RpPlane, kind: RpExport, out: *mut *mut c_char) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            let text = match kind {
                RpExport::PlaneJson => export::plane_json(p).map_err(from_error)?,
                RpExport::IncidenceCsv => export::incidence_csv(p).map_err(from_error)?,
                RpExport::GraphDot | RpExport::GraphJson | RpExport::GraphCsv => {
                    let g = p.neighbour_graph().map_err(from_error)?;
                    match kind {
                        RpExport::GraphDot => export::graph_dot(p, &g, false),
                        RpExport::GraphJson => export::graph_json(p, &g),
                        _ => export::graph_csv(&g),
                    }
                }
            };
            unsafe { write_string(out, text) }
        })())
    })
}

/// Runs the claim suite. `passed` receives the overall verdict; `report`
/// (optional) receives the text report, to be freed with `rp_string_free`.
///
/// # Safety
/// `plane` must be a live handle; `passed` writable; `report` NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn rp_plane_verify(
    plane: *const RpPlane,
    depth: RpDepth,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> RpStatus {
    guard(|| {
        status((|| {
            let p = unsafe { plane_ref(plane)? };
            let depth = match depth {
                RpDepth::Fast => Depth::Fast,
                RpDepth::Definitional => Depth::Definitional,
                RpDepth::Oracle => Depth::Oracle,
            };
            let r = verify(p, depth).map_err(from_error)?;
            unsafe { write_out(passed, r.all_passed())? };
            if !report.is_null() {
                unsafe { write_string(report, r.to_text())? };
            }
            Ok(())
        })())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: s came from CString::into_raw in write_string
        drop(unsafe { CString::from_raw(s) });
    }
}
