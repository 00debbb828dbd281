use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use omball_ffi::*;

const TRIANGLE: &str = "dim 2\nx 1 0 0\ny 0 1 0\ns 1 1 1\n";
const FOUR_LINES: &str = "dim 2\nx 1 0 0\ny 0 1 0\ns 1 1 1\nt 1 1 -1\n";

fn parse(text: &str) -> *mut OmInstance {
    let text = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    let s = unsafe { omball_instance_parse(text.as_ptr(), ptr::null(), &mut inst) };
    assert_eq!(s, OmStatus::Ok);
    assert!(!inst.is_null());
    inst
}

fn last_error() -> String {
    let p = omball_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn triangle_round_trip() {
    let inst = parse(TRIANGLE);
    unsafe {
        assert_eq!(omball_instance_elements(inst), 4);
        assert_eq!(omball_instance_covectors(inst), 51);
        let mut ok = false;
        assert_eq!(omball_instance_axioms_ok(inst, &mut ok), OmStatus::Ok);
        assert!(ok);
        assert_eq!(omball_instance_is_uniform(inst, &mut ok), OmStatus::Ok);
        assert!(ok);

        let mut len = 0;
        assert_eq!(
            omball_bounded_f_vector(inst, ptr::null_mut(), 0, &mut len),
            OmStatus::BufferTooSmall
        );
        assert_eq!(len, 3);
        let mut buf = [0usize; 3];
        assert_eq!(omball_bounded_f_vector(inst, buf.as_mut_ptr(), 3, &mut len), OmStatus::Ok);
        assert_eq!(buf, [3, 3, 1]);

        let mut rep = ptr::null_mut();
        assert_eq!(omball_verify(inst, 0, &mut rep), OmStatus::Ok);
        assert_eq!(omball_report_verdict(rep), OmVerdict::BallCertified);
        let mut json = ptr::null_mut();
        assert_eq!(omball_report_json(rep, &mut json), OmStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        assert!(text.contains("\"verdict\": \"ball-certified\""));
        assert!(!text.contains("generated_at"));
        omball_string_free(json);
        omball_report_free(rep);
        omball_instance_free(inst);
    }
}

#[test]
fn four_lines_are_refuted() {
    let inst = parse(FOUR_LINES);
    unsafe {
        let mut uniform = true;
        assert_eq!(omball_instance_is_uniform(inst, &mut uniform), OmStatus::Ok);
        assert!(!uniform);
        let mut rep = ptr::null_mut();
        assert_eq!(omball_verify(inst, 0, &mut rep), OmStatus::Ok);
        assert_eq!(omball_report_verdict(rep), OmVerdict::Refuted);
        omball_report_free(rep);
        omball_instance_free(inst);
    }
}

#[test]
fn parse_errors_set_the_message() {
    let bad = CString::new("dim 2\nx 1 0\n").unwrap();
    let mut inst = ptr::null_mut();
    let s = unsafe { omball_instance_parse(bad.as_ptr(), ptr::null(), &mut inst) };
    assert_eq!(s, OmStatus::Parse);
    assert!(inst.is_null());
    assert!(last_error().starts_with("<memory>:2:"), "{}", last_error());

    let g = CString::new("nope").unwrap();
    let ok = CString::new(TRIANGLE).unwrap();
    let s = unsafe { omball_instance_parse(ok.as_ptr(), g.as_ptr(), &mut inst) };
    assert_ne!(s, OmStatus::Ok);
}

#[test]
fn null_arguments_are_rejected() {
    let mut inst = ptr::null_mut();
    assert_eq!(
        unsafe { omball_instance_parse(ptr::null(), ptr::null(), &mut inst) },
        OmStatus::NullPointer
    );
    let mut b = false;
    assert_eq!(unsafe { omball_instance_axioms_ok(ptr::null(), &mut b) }, OmStatus::NullPointer);
    assert_eq!(unsafe { omball_instance_elements(ptr::null()) }, 0);
    assert_eq!(unsafe { omball_report_verdict(ptr::null()) }, OmVerdict::NotApplicable);
    unsafe {
        omball_instance_free(ptr::null_mut());
        omball_report_free(ptr::null_mut());
        omball_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_utf8_is_reported() {
    let bytes = [0xffu8, 0xfe, 0];
    let mut inst = ptr::null_mut();
    let s = unsafe { omball_instance_parse(bytes.as_ptr().cast(), ptr::null(), &mut inst) };
    assert_eq!(s, OmStatus::InvalidUtf8);
}

#[test]
fn generate_then_parse() {
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { omball_generate(1, 4, 2, 1000, &mut text) }, OmStatus::Ok);
    let s = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    unsafe { omball_string_free(text) };
    assert!(s.starts_with("dim 2\n"));
    let inst = parse(&s);
    let mut buf = [0usize; 3];
    let mut len = 0;
    assert_eq!(
        unsafe { omball_bounded_f_vector(inst, buf.as_mut_ptr(), 3, &mut len) },
        OmStatus::Ok
    );
    assert_eq!(buf[2], 3);
    unsafe { omball_instance_free(inst) };

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { omball_generate(1, 2, 2, 10, &mut text) }, OmStatus::Precondition);
    assert!(text.is_null());
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(omball_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/omball.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for sym in ["omball_instance_parse", "omball_verify", "omball_report_json", "OM_STATUS_OK"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"omball.h\"\nint main(void) { OmInstance *i = 0; return omball_instance_parse(\"dim 1\", 0, &i) == OM_STATUS_OK; }\n",
    )
    .unwrap();
    let Ok(out) = Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header.parent().unwrap())
        .arg(&src)
        .output()
    else {
        eprintln!("no C compiler; header syntax not checked");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
