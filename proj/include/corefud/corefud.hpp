#pragma once

// Umbrella header.

#include "corefud/alignment.hpp"
#include "corefud/conllu.hpp"
#include "corefud/convert.hpp"
#include "corefud/entity.hpp"
#include "corefud/error.hpp"
#include "corefud/model.hpp"
#include "corefud/ontonotes.hpp"
#include "corefud/pipeline.hpp"
#include "corefud/ptb.hpp"
#include "corefud/stats.hpp"
