#pragma once
#include <stdexcept>
#include <string>

namespace trihit {

// Everything this library throws on purpose derives from Error.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* input / validation */
struct DegenerateTriangle : Error { using Error::Error; };
struct NegativeLength : Error { using Error::Error; };
struct AxisOrder : Error { using Error::Error; };          // ellipse needs g >= h
struct EmptyInput : Error { using Error::Error; };
struct NeedleTooLong : Error { using Error::Error; };
struct ObtuseLatticeUnsupported : Error { using Error::Error; };

// Body fails the fit condition; carries the (negative) margin c - max c*.
struct BodyTooLarge : Error {
    double margin;
    BodyTooLarge(double margin_, const std::string& what) : Error(what), margin(margin_) {}
};

/* numerical failures */
struct QuadratureFailure : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };

}  // namespace trihit
