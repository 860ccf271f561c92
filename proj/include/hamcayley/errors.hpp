/*
   Copyright 2026 The hamcayley Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hamcayley {

enum class ErrorCode {
    NoCubeRoot,
    InvalidDescriptor,
    InvalidAction,
    FamilyMismatch,
    NotGenerating,
    IdentityGenerator,
    BadLabel,
    NotClosed,
    VoltageDoesNotGenerate,
    NoEdgeLabelled,
    ExhaustedSubstitutions,
    DoubleEdgeNotOnCycle,
    NotHamiltonian,
    MalformedPattern,
    BadParameters,
    EndpointZeroForBothRoots,
    EndpointMismatch,
    MalformedCertificate,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NoCubeRoot: return "NoCubeRoot";
        case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
        case ErrorCode::InvalidAction: return "InvalidAction";
        case ErrorCode::FamilyMismatch: return "FamilyMismatch";
        case ErrorCode::NotGenerating: return "NotGenerating";
        case ErrorCode::IdentityGenerator: return "IdentityGenerator";
        case ErrorCode::BadLabel: return "BadLabel";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::VoltageDoesNotGenerate: return "VoltageDoesNotGenerate";
        case ErrorCode::NoEdgeLabelled: return "NoEdgeLabelled";
        case ErrorCode::ExhaustedSubstitutions: return "ExhaustedSubstitutions";
        case ErrorCode::DoubleEdgeNotOnCycle: return "DoubleEdgeNotOnCycle";
        case ErrorCode::NotHamiltonian: return "NotHamiltonian";
        case ErrorCode::MalformedPattern: return "MalformedPattern";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::EndpointZeroForBothRoots: return "EndpointZeroForBothRoots";
        case ErrorCode::EndpointMismatch: return "EndpointMismatch";
        case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

}  // namespace hamcayley
