use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use edgeaug_ffi::*;

const P3: &str = "p aug 3 2 1 2 1\ne 0 1\ne 1 2\nl 0 2 1 7/2\n";

fn parse(text: &str) -> (EdgeaugStatus, *mut EdgeaugInstance) {
    let c = CString::new(text).unwrap();
    let mut inst = ptr::null_mut();
    let status = unsafe { edgeaug_instance_parse(c.as_ptr(), &mut inst) };
    (status, inst)
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    edgeaug_string_free(s);
    out
}

#[test]
fn solve_round_trip() {
    let (status, inst) = parse(P3);
    assert_eq!(status, EdgeaugStatus::Ok);
    unsafe {
        assert_eq!(take(edgeaug_instance_to_text(inst)), P3);
        let mut sol = ptr::null_mut();
        assert_eq!(edgeaug_solve(inst, &mut sol), EdgeaugStatus::Ok);
        assert_eq!(edgeaug_solution_status(sol), EdgeaugStatus::Ok);
        assert_eq!(take(edgeaug_solution_cost(sol)), "7/2");
        assert_eq!(edgeaug_solution_weight(sol), 1);
        assert_eq!(edgeaug_solution_link_count(sol), 1);
        let (mut u, mut v, mut t) = (9, 9, 9);
        assert_eq!(
            edgeaug_solution_link(sol, 0, &mut u, &mut v, &mut t),
            EdgeaugStatus::Ok
        );
        assert_eq!((u, v, t), (0, 2, 1));
        assert_eq!(
            edgeaug_solution_link(sol, 1, &mut u, &mut v, &mut t),
            EdgeaugStatus::InvalidArgument
        );
        assert!(
            take(edgeaug_solution_to_json(sol)).starts_with(r#"{"status":"optimal","cost":"7/2""#)
        );
        edgeaug_solution_free(sol);

        let mut sol = ptr::null_mut();
        assert_eq!(
            edgeaug_oracle(inst, false, true, &mut sol),
            EdgeaugStatus::Ok
        );
        edgeaug_solution_free(sol);
        let mut sol = ptr::null_mut();
        assert_eq!(edgeaug_node12(inst, &mut sol), EdgeaugStatus::Ok);
        edgeaug_solution_free(sol);
        edgeaug_instance_free(inst);
    }
}

#[test]
fn infeasible_and_errors() {
    let (_, inst) = parse("p aug 3 0 1 2 1\nl 0 1 1 1\n");
    unsafe {
        let mut sol = ptr::null_mut();
        assert_eq!(
            edgeaug_zero2(inst, true, &mut sol),
            EdgeaugStatus::Infeasible
        );
        assert_eq!(
            take(edgeaug_solution_to_json(sol)),
            r#"{"status":"infeasible"}"#
        );
        edgeaug_solution_free(sol);
        let mut sol = ptr::null_mut();
        assert_eq!(edgeaug_node12(inst, &mut sol), EdgeaugStatus::Precondition);
        assert!(sol.is_null());
        edgeaug_instance_free(inst);

        let (status, inst) = parse("p aug 2 1 0 2 1\ne 0 0\n");
        assert_eq!(status, EdgeaugStatus::Parse);
        assert!(inst.is_null());
        let message = CStr::from_ptr(edgeaug_last_error_message())
            .to_str()
            .unwrap();
        assert!(message.starts_with("line 2"), "{message}");

        let mut sol = ptr::null_mut();
        assert_eq!(
            edgeaug_solve(ptr::null(), &mut sol),
            EdgeaugStatus::NullPointer
        );
        assert!(edgeaug_solution_cost(ptr::null()).is_null());
    }
}

#[test]
fn header_compiles() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/edgeaug.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "edgeaug_instance_parse",
        "edgeaug_solve",
        "edgeaug_last_error_message",
    ] {
        assert!(text.contains(name), "{name}");
    }
    let probe = std::env::temp_dir().join("edgeaug_header_probe.c");
    std::fs::write(
        &probe,
        format!("#include \"{header}\"\nint main(void) {{ return 0; }}\n"),
    )
    .unwrap();
    match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg(&probe)
        .status()
    {
        Ok(status) => assert!(status.success()),
        Err(_) => eprintln!("no C compiler; skipped the syntax check"),
    }
}
