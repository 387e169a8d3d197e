"""Simulator for {CCX, H} circuits that evaluates them as trees of suspended continuations."""
from .amplitudes import Amplitude, amp_add, amp_mul_hscale, amp_neg, amp_one, amp_prob, amp_to_float
from .circuit import CCX, Circuit, Const, H, Wire, h_count, mk_cx, mk_x, parse_circuit, validate
from .interpreter import HASH, LIST, Collector, WeightedState, eval_circuit, run_hash, run_list, trace_tree

__version__ = "0.1.0"
