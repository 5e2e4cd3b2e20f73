#pragma once

#include <iosfwd>
#include <string>

#include "loopforms/forms.hpp"
#include "loopforms/plumbing.hpp"

namespace loopforms::io {

// Line-oriented, hand-writable documents. Integers are decimal strings of
// arbitrary precision; '#' starts a comment. A singular-set document:
//
//     p 3
//     orientation +1
//     sphere 1 +1
//     sphere 1 +1
//     sphere 1 +1
//
// with an optional `exception pseudofree-p3-b1` or
// `exception fixed-point-free-p2-hyperbolic` line in place of the spheres.
// A form document:
//
//     rank 2
//     row 0 1
//     row 1 0

plumbing::SingularSetData parse_singular_data(std::istream& in);
plumbing::SingularSetData parse_singular_data(const std::string& text);
std::string write_singular_data(const plumbing::SingularSetData& data);

forms::SymmetricForm parse_form(std::istream& in);
forms::SymmetricForm parse_form(const std::string& text);
std::string write_form(const forms::SymmetricForm& form);

/// "singular" or "form", decided by the first key in the document.
std::string sniff_document_kind(const std::string& text);

std::string read_file(const std::string& path);

std::string exception_flag_name(plumbing::ExceptionFlag flag);

}  // namespace loopforms::io
