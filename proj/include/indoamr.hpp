#pragma once

#include "indoamr/amr_corpus.hpp"
#include "indoamr/amr_graph.hpp"
#include "indoamr/classifier/cross_validation.hpp"
#include "indoamr/classifier/decision_tree.hpp"
#include "indoamr/classifier/gbt.hpp"
#include "indoamr/classifier/model.hpp"
#include "indoamr/conllu.hpp"
#include "indoamr/constructor.hpp"
#include "indoamr/embeddings.hpp"
#include "indoamr/error.hpp"
#include "indoamr/features.hpp"
#include "indoamr/metrics/scores.hpp"
#include "indoamr/metrics/smatch.hpp"
#include "indoamr/pairgen.hpp"
#include "indoamr/penman.hpp"
#include "indoamr/pipeline.hpp"
