/* tslint:disable */
/* eslint-disable */

/**
 * `N(t)` and `D(t)` for the status line.
 */
export function countSummary(a1: number, a2: number, theta: number, t: number): Float64Array;

export function ellipsePoints(a1: number, a2: number, theta: number, t: number): Int32Array;

export function remainderCurve(a1: number, a2: number, theta: number, t_max: number, samples: number): Float64Array;

export function surfaceResiduals(t_max: number, samples: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly countSummary: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly ellipsePoints: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly remainderCurve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly surfaceResiduals: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
