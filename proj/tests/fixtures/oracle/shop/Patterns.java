package shop;

public class Patterns {
    private int[] data = {3, 1, 2};

    public static void main(String[] args) {
        Patterns p = new Patterns();
        int[] result = p.sorted();
        print_ary(result);
        int x = p.first();
        x = p.first();
        if (p.first() > 0) {
            print_ary(result);
        }
        System.out.println(p.first() + x);
        p.sorted();
        x += p.first();
        p.self().sorted();
    }

    static void print_ary(int[] a) {
        for (int i = 0; i < a.length; i++) {
            System.out.print(a[i]);
        }
    }

    int[] sorted() {
        int[] copy = data.clone();
        java.util.Arrays.sort(copy);
        return copy;
    }

    int first() {
        return sorted()[0];
    }

    Patterns self() {
        return this;
    }
}
