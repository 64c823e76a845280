// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Thin binary wrapper around [`dicke_qme::cli`].

fn main() -> std::process::ExitCode {
    dicke_qme::cli::main_entry()
}
