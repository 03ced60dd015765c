/*
 *   Copyright 2026 The suparg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SUPARG_CERTIFICATE_JSON_HPP
#define SUPARG_CERTIFICATE_JSON_HPP

#include <string>

#include <json.hpp>

#include "suparg/certificate.hpp"

namespace suparg::certs {

inline constexpr const char *kSchema = "suparg-cert/1";

/// Document with every binary64 written as a hexfloat string.
nlohmann::ordered_json to_json(const Certificate &cert);

/// Inverse of to_json. Throws StructureError on schema violations.
Certificate certificate_from_json(const nlohmann::ordered_json &doc);

/// Pretty-printed document followed by a newline.
std::string dump(const Certificate &cert);

nlohmann::ordered_json to_json(const Conclusion &c);

} // namespace suparg::certs

#endif
