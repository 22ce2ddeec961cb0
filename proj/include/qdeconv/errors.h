// Copyright 2026 The qdeconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QDECONV_ERRORS_H
#define QDECONV_ERRORS_H

#include <stdexcept>
#include <string>

namespace qdeconv {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitian : Error {
    using Error::Error;
};

/// A model or operation parameter is outside its legal domain.
struct InvalidParameter : Error {
    using Error::Error;
};

/// T2 > 2*T1, which would make the dephasing probability negative.
struct UnphysicalT2 : InvalidParameter {
    using InvalidParameter::InvalidParameter;
};

struct SingularPtm : Error {
    SingularPtm(const std::string &what, double det) : Error(what), determinant(det) {}
    double determinant;
};

struct NonInvertible : Error {
    NonInvertible(std::string model_desc, std::string why)
        : Error("non-invertible noise " + model_desc + ": " + why),
          model(std::move(model_desc)),
          reason(std::move(why)) {}
    std::string model;
    std::string reason;
};

struct NotDiagonal : Error {
    using Error::Error;
};

/// The correction factor exceeds the configured cap.
struct CorrectionOverflow : Error {
    CorrectionOverflow(const std::string &what, double f) : Error(what), factor(f) {}
    double factor;
};

struct NonUnitalUnsupported : Error {
    using Error::Error;
};

struct SingularAssignment : Error {
    using Error::Error;
};

struct DegenerateFit : Error {
    using Error::Error;
};

/// Bad configuration file, flag, or input document.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qdeconv

#endif  // QDECONV_ERRORS_H
