#pragma once

#include "fgr/counting.hpp"
#include "fgr/emb_format.hpp"
#include "fgr/embedding.hpp"
#include "fgr/error.hpp"
#include "fgr/graph_corpus.hpp"
#include "fgr/numeric.hpp"
#include "fgr/perm.hpp"
#include "fgr/plane_permutation.hpp"
#include "fgr/reembed.hpp"
