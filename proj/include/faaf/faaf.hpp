#pragma once

// Umbrella header for the faaf fact-verification library.

#include "faaf/core.hpp"
#include "faaf/dataset.hpp"
#include "faaf/engine.hpp"
#include "faaf/fact_generator.hpp"
#include "faaf/function_builder.hpp"
#include "faaf/gateway.hpp"
#include "faaf/metrics.hpp"
#include "faaf/prompts.hpp"
#include "faaf/response_parser.hpp"
#include "faaf/run_store.hpp"
#include "faaf/usage.hpp"
