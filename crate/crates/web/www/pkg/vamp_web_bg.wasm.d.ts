/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_playground_free: (a: number, b: number) => void;
export const map: (a: number, b: number, c: number) => [number, number, number, number];
export const plan: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
export const playground_describe: (a: number, b: number) => [number, number, number, number];
export const playground_insert: (a: number, b: number, c: number, d: number) => [number, number, number];
export const playground_is_empty: (a: number) => number;
export const playground_len: (a: number) => number;
export const playground_new: (a: number) => [number, number, number];
export const playground_query: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const view: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
