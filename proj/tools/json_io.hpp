// Copyright 2026 The rnatreedit Authors
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


#ifndef RNATREEDIT_TOOLS_JSON_IO_HPP_
#define RNATREEDIT_TOOLS_JSON_IO_HPP_

#include <json.hpp>

#include "rnatreedit/edit_script.hpp"
#include "rnatreedit/tree.hpp"

namespace rnatreedit::cli {

using Json = nlohmann::ordered_json;

std::string LabelText(const ObjectLabel& label);
ObjectLabel ParseLabelText(const std::string& text);

Json ToJson(const FusionPath& path);
FusionPath FusionPathFromJson(const Json& j);

Json ToJson(const EditOp& op);
EditOp EditOpFromJson(const Json& j);

Json ToJson(const EditScript& script);
EditScript EditScriptFromJson(const Json& j);

Json ToJson(const Mapping& mapping);
Mapping MappingFromJson(const Json& j);

}  // namespace rnatreedit::cli

#endif  // RNATREEDIT_TOOLS_JSON_IO_HPP_
