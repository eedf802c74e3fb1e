public class BareDec {
  public static void main(String[] args) {
    int total;
    total = 0;
    total = total + 10;
    if (total < 100) {
      System.out.println(total);
    }
  }
}
