#pragma once

#include "tsetlin/archive.hpp"
#include "tsetlin/binary_tm.hpp"
#include "tsetlin/bitvec.hpp"
#include "tsetlin/cifar10.hpp"
#include "tsetlin/clause_bank.hpp"
#include "tsetlin/conv.hpp"
#include "tsetlin/datagen.hpp"
#include "tsetlin/error.hpp"
#include "tsetlin/experiments.hpp"
#include "tsetlin/multiclass.hpp"
#include "tsetlin/params.hpp"
#include "tsetlin/rng.hpp"
#include "tsetlin/stats.hpp"
#include "tsetlin/thermometer.hpp"
#include "tsetlin/uncertainty.hpp"
