#pragma once

#include "shadowkit/common.hpp"
#include "shadowkit/kgraph.hpp"
#include "shadowkit/gbinom.hpp"
#include "shadowkit/kkbound.hpp"
#include "shadowkit/kkstab.hpp"
#include "shadowkit/ekr.hpp"
#include "shadowkit/cyclic.hpp"
#include "shadowkit/cayley.hpp"
#include "shadowkit/rank.hpp"
#include "shadowkit/incmat.hpp"
#include "shadowkit/io.hpp"
#include "shadowkit/generators.hpp"
#include "shadowkit/verify.hpp"
#include "shadowkit/cli.hpp"
