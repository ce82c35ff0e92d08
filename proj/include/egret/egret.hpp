#pragma once

// Umbrella header for the core library. HTTP clients live in
// egret/remote.hpp and are not pulled in here.

#include "egret/config.hpp"
#include "egret/corpus.hpp"
#include "egret/embed.hpp"
#include "egret/errors.hpp"
#include "egret/gate.hpp"
#include "egret/index.hpp"
#include "egret/io.hpp"
#include "egret/lexical.hpp"
#include "egret/pipeline.hpp"
#include "egret/select.hpp"
#include "egret/stats.hpp"
#include "egret/text.hpp"
#include "egret/wordlists.hpp"

namespace egret {
inline constexpr const char* kVersion = "0.1.0";
}
