#pragma once

// Umbrella header for the multilingual long-reasoning toolkit: corpus
// construction with language-boundary tokens, cue-based reflection
// segmentation, language identification, decode-time language steering, and
// evaluation/reporting. Each header is also independently includable.

#include "l2/augmenter.hpp"
#include "l2/corpus.hpp"
#include "l2/error.hpp"
#include "l2/evalharness.hpp"
#include "l2/intervene.hpp"
#include "l2/lang.hpp"
#include "l2/langid.hpp"
#include "l2/log.hpp"
#include "l2/rng.hpp"
#include "l2/segmenter.hpp"
#include "l2/translator.hpp"
#include "l2/unicode.hpp"
