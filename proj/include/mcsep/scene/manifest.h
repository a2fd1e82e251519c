// include/mcsep/scene/manifest.h

// Copyright 2026  mcsep authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef MCSEP_SCENE_MANIFEST_H_
#define MCSEP_SCENE_MANIFEST_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcsep/scene/scene.h"

namespace mcsep::scene {

// Scene manifest, a JSON document. The schema is described in README.md.
// Relative paths resolve against base_dir. seed_override replaces the
// manifest's top-level seed. Throws ConfigError on schema violations and
// InputError on unreadable audio.
std::vector<SceneSpec> ParseManifest(const std::string &text,
                                     const std::string &base_dir,
                                     std::optional<std::uint64_t> seed_override = {});

std::vector<SceneSpec> LoadManifest(const std::string &path,
                                    std::optional<std::uint64_t> seed_override = {});

// JSON echo of a rendered scene: the SceneSpec plus resolved delays, gains,
// noise scale and achieved SNR.
std::string SceneEcho(const SceneSpec &spec, const SceneOutput &output);

}  // namespace mcsep::scene

#endif  // MCSEP_SCENE_MANIFEST_H_
