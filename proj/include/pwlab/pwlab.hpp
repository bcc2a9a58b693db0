#pragma once

#include "pwlab/corpus.hpp"
#include "pwlab/errors.hpp"
#include "pwlab/estimators.hpp"
#include "pwlab/experiments.hpp"
#include "pwlab/grid.hpp"
#include "pwlab/identities.hpp"
#include "pwlab/io.hpp"
#include "pwlab/polyops.hpp"
#include "pwlab/report.hpp"
#include "pwlab/seminorm.hpp"
#include "pwlab/signal.hpp"
#include "pwlab/transforms.hpp"
#include "pwlab/weights.hpp"
