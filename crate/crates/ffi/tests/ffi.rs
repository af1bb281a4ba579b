use std::ffi::{c_char, CStr, CString};
use std::ptr;

use afsolve_ffi::*;

const EXAMPLE1: &str = "arg(a). arg(b). arg(c). arg(d). arg(e). arg(f).
att(a,b). att(b,d). att(c,b). att(c,d). att(c,e). att(d,c). att(d,e). att(e,f).";

fn parse(text: &str) -> *mut AfsFramework {
    let text = CString::new(text).unwrap();
    let mut af = ptr::null_mut();
    let status = unsafe { afs_framework_parse_apx(text.as_ptr(), false, &mut af) };
    assert_eq!(status, AfsStatus::Ok);
    af
}

unsafe fn take_string(s: *mut c_char) -> String {
    let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
    afs_string_free(s);
    owned
}

fn last_error() -> String {
    let p = afs_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn enumerate_and_format_example1() {
    let af = parse(EXAMPLE1);
    unsafe {
        assert_eq!(afs_framework_num_args(af), 6);
        assert_eq!(afs_framework_num_attacks(af), 8);

        let mut exts = ptr::null_mut();
        assert_eq!(
            afs_enumerate(af, AfsSemantics::Preferred, 0, &mut exts),
            AfsStatus::Ok
        );
        assert_eq!(afs_extensions_count(exts), 2);

        let mut buf = [0usize; 6];
        let mut len = 0;
        assert_eq!(
            afs_extension_members(exts, 1, buf.as_mut_ptr(), buf.len(), &mut len),
            AfsStatus::Ok
        );
        assert_eq!(&buf[..len], &[0, 3, 5]);

        let mut text = ptr::null_mut();
        assert_eq!(
            afs_extensions_format(af, exts, false, &mut text),
            AfsStatus::Ok
        );
        assert_eq!(take_string(text), "[a,c,f]\n[a,d,f]\n");
        assert_eq!(
            afs_extensions_format(af, exts, true, &mut text),
            AfsStatus::Ok
        );
        assert_eq!(take_string(text), "[[a,c,f],[a,d,f]]");

        afs_extensions_free(exts);
        afs_framework_free(af);
    }
}

#[test]
fn small_buffer_reports_length() {
    let af = parse(EXAMPLE1);
    unsafe {
        let mut exts = ptr::null_mut();
        assert_eq!(
            afs_enumerate(af, AfsSemantics::Stable, 0, &mut exts),
            AfsStatus::Ok
        );
        let mut len = 0;
        assert_eq!(afs_extension_len(exts, 0, &mut len), AfsStatus::Ok);
        assert_eq!(len, 3);
        let mut buf = [0usize; 2];
        assert_eq!(
            afs_extension_members(exts, 0, buf.as_mut_ptr(), buf.len(), &mut len),
            AfsStatus::BufferTooSmall
        );
        assert_eq!(len, 3);
        assert_eq!(
            afs_extension_len(exts, 9, &mut len),
            AfsStatus::IndexOutOfRange
        );
        afs_extensions_free(exts);
        afs_framework_free(af);
    }
}

#[test]
fn queries() {
    let af = parse(EXAMPLE1);
    let c = CString::new("c").unwrap();
    let a = CString::new("a").unwrap();
    let missing = CString::new("zz").unwrap();
    let mut answer = false;
    unsafe {
        assert_eq!(
            afs_query(
                af,
                AfsSemantics::Preferred,
                c.as_ptr(),
                false,
                0,
                &mut answer
            ),
            AfsStatus::Ok
        );
        assert!(answer);
        assert_eq!(
            afs_query(
                af,
                AfsSemantics::Preferred,
                c.as_ptr(),
                true,
                0,
                &mut answer
            ),
            AfsStatus::Ok
        );
        assert!(!answer);
        assert_eq!(
            afs_query(
                af,
                AfsSemantics::Preferred,
                a.as_ptr(),
                true,
                0,
                &mut answer
            ),
            AfsStatus::Ok
        );
        assert!(answer);
        assert_eq!(
            afs_query(
                af,
                AfsSemantics::Preferred,
                missing.as_ptr(),
                true,
                0,
                &mut answer
            ),
            AfsStatus::UnknownArgument
        );
        assert!(last_error().contains("zz"));
        let mut index = 0;
        assert_eq!(
            afs_framework_index_of(af, c.as_ptr(), &mut index),
            AfsStatus::Ok
        );
        assert_eq!(index, 2);
        let mut name = ptr::null_mut();
        assert_eq!(afs_framework_arg_name(af, 5, &mut name), AfsStatus::Ok);
        assert_eq!(take_string(name), "f");
        assert_eq!(
            afs_framework_arg_name(af, 6, &mut name),
            AfsStatus::IndexOutOfRange
        );
        afs_framework_free(af);
    }
}

#[test]
fn parse_errors_set_message() {
    let text = CString::new("arg(a).\natt(a,b).").unwrap();
    let mut af = ptr::null_mut();
    unsafe {
        assert_eq!(
            afs_framework_parse_apx(text.as_ptr(), false, &mut af),
            AfsStatus::Parse
        );
        assert!(af.is_null());
        assert!(last_error().starts_with("line 2"));
        assert_eq!(
            afs_framework_parse_apx(text.as_ptr(), true, &mut af),
            AfsStatus::Ok
        );
        assert_eq!(afs_framework_num_args(af), 2);
        afs_framework_free(af);
        assert!(afs_last_error().is_null());
    }
}

#[test]
fn null_arguments() {
    let mut af = ptr::null_mut();
    unsafe {
        assert_eq!(
            afs_framework_parse_apx(ptr::null(), false, &mut af),
            AfsStatus::NullPointer
        );
        assert_eq!(afs_framework_num_args(ptr::null()), 0);
        assert_eq!(afs_extensions_count(ptr::null()), 0);
        let mut exts = ptr::null_mut();
        assert_eq!(
            afs_enumerate(ptr::null(), AfsSemantics::Stage, 0, &mut exts),
            AfsStatus::NullPointer
        );
        afs_framework_free(ptr::null_mut());
        afs_extensions_free(ptr::null_mut());
        afs_string_free(ptr::null_mut());
    }
}

#[test]
fn from_arrays() {
    let from = [0usize, 1, 2];
    let to = [1usize, 2, 0];
    let mut af = ptr::null_mut();
    unsafe {
        assert_eq!(
            afs_framework_from_arrays(3, ptr::null(), from.as_ptr(), to.as_ptr(), 3, &mut af),
            AfsStatus::Ok
        );
        let mut exts = ptr::null_mut();
        assert_eq!(
            afs_enumerate(af, AfsSemantics::Stable, 0, &mut exts),
            AfsStatus::Ok
        );
        assert_eq!(afs_extensions_count(exts), 0);
        afs_extensions_free(exts);
        afs_framework_free(af);

        let names = [CString::new("x").unwrap(), CString::new("y").unwrap()];
        let ptrs: Vec<*const c_char> = names.iter().map(|n| n.as_ptr()).collect();
        assert_eq!(
            afs_framework_from_arrays(2, ptrs.as_ptr(), from.as_ptr(), to.as_ptr(), 1, &mut af),
            AfsStatus::Ok
        );
        let mut facts = ptr::null_mut();
        assert_eq!(afs_emit_facts(af, &mut facts), AfsStatus::Ok);
        assert_eq!(take_string(facts), "arg(x).\narg(y).\natt(x,y).\n");
        afs_framework_free(af);

        assert_eq!(
            afs_framework_from_arrays(2, ptr::null(), from.as_ptr(), to.as_ptr(), 3, &mut af),
            AfsStatus::IndexOutOfRange
        );
    }
}

#[test]
fn budget_exhaustion() {
    let af = parse(EXAMPLE1);
    let mut exts = ptr::null_mut();
    unsafe {
        assert_eq!(
            afs_enumerate(af, AfsSemantics::ConflictFree, 2, &mut exts),
            AfsStatus::BudgetExceeded
        );
        afs_framework_free(af);
    }
}

#[test]
fn encodings_and_tgf() {
    let name = CString::new("stage2").unwrap();
    let bogus = CString::new("pref3").unwrap();
    let tgf = CString::new("1\n2\n#\n1 2\n").unwrap();
    let mut text = ptr::null_mut();
    unsafe {
        assert_eq!(afs_emit_encoding(name.as_ptr(), &mut text), AfsStatus::Ok);
        assert_eq!(take_string(text).lines().count(), 14);
        assert_eq!(
            afs_emit_encoding(bogus.as_ptr(), &mut text),
            AfsStatus::InvalidValue
        );

        let mut af = ptr::null_mut();
        assert_eq!(
            afs_framework_parse_tgf(tgf.as_ptr(), &mut af),
            AfsStatus::Ok
        );
        assert_eq!(afs_framework_num_attacks(af), 1);
        afs_framework_free(af);
        assert!(!CStr::from_ptr(afs_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/afsolve.h");
    for symbol in [
        "afs_last_error",
        "afs_version",
        "afs_framework_parse_apx",
        "afs_framework_parse_tgf",
        "afs_framework_from_arrays",
        "afs_framework_free",
        "afs_framework_num_args",
        "afs_framework_num_attacks",
        "afs_framework_arg_name",
        "afs_framework_index_of",
        "afs_enumerate",
        "afs_query",
        "afs_extensions_free",
        "afs_extensions_count",
        "afs_extension_len",
        "afs_extension_members",
        "afs_extensions_format",
        "afs_emit_encoding",
        "afs_emit_facts",
        "afs_string_free",
    ] {
        assert!(header.contains(&format!("{symbol}(")), "{symbol}");
    }
}
