/* tslint:disable */
/* eslint-disable */

/**
 * A tree of FPNNT versions. Every inserted point becomes a new version and
 * is labeled with its version id.
 */
export class Playground {
    free(): void;
    [Symbol.dispose](): void;
    describe(version: number): string;
    /**
     * A negative `parent` means the newest version.
     */
    insert(parent: number, x: number, y: number): number;
    is_empty(): boolean;
    /**
     * Number of versions created so far.
     */
    len(): number;
    constructor(m: number);
    query(version: number, x: number, y: number, r: number): string;
}

export function map(kind: string, size: number): string;

/**
 * Runs the relaxed planner on a generated domain.
 */
export function plan(kind: string, size: number, method: string, c_viol: number): string;

/**
 * The viewcone, footprint and view ball of a pose in a generated domain.
 */
export function view(kind: string, size: number, x: number, y: number, orient: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_playground_free: (a: number, b: number) => void;
    readonly map: (a: number, b: number, c: number) => [number, number, number, number];
    readonly plan: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly playground_describe: (a: number, b: number) => [number, number, number, number];
    readonly playground_insert: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly playground_is_empty: (a: number) => number;
    readonly playground_len: (a: number) => number;
    readonly playground_new: (a: number) => [number, number, number];
    readonly playground_query: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly view: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly __externref_table_alloc: () => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
