/* tslint:disable */
/* eslint-disable */

/**
 * `[{level, order, q, label}]` for the invertible part of the centre over
 * levels `0..=kmax`, as JSON.
 */
export function su2CentreTable(kmax: number): string;

/**
 * Moduli of simples for `SU(2)` at level `k`, as SVG.
 */
export function su2Moduli(k: number): string;

/**
 * Moduli of simples of the interpolated Tambara-Yamagami category, as SVG.
 */
export function tyModuli(p: number, k: number, tau_plus: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly su2CentreTable: (a: number) => [number, number, number, number];
    readonly su2Moduli: (a: number) => [number, number, number, number];
    readonly tyModuli: (a: number, b: number, c: number) => [number, number, number, number];
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
